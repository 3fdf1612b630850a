"""Build script: compiles the optional fast-kernel extension when Cython is available.

Set MONOHEIGHT_NO_EXTENSION=1 to skip compilation; the package then runs on the
pure-Python kernels.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MONOHEIGHT_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("monoheight._fastkernels", ["src/monoheight/_fastkernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
