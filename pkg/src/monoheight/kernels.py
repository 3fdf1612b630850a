"""Kernel selection: compiled extension when available, pure Python otherwise.

MONOHEIGHT_PURE_PYTHON=1 forces the fallback; monoheight.kernels.BACKEND says
which implementation is live.
"""

import os

if os.environ.get("MONOHEIGHT_PURE_PYTHON") == "1":
    from . import _purekernels as _impl
else:
    try:
        from . import _fastkernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _purekernels as _impl

BACKEND = _impl.BACKEND
mat_mul = _impl.mat_mul
mat_vec = _impl.mat_vec
mat_pow = _impl.mat_pow
max_bits = _impl.max_bits
