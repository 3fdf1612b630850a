"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class MonoheightError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class InputError(MonoheightError):
    """Malformed or out-of-domain input (zero coordinate, singular matrix, ...)."""

    exit_code = 2


class UnsupportedError(MonoheightError):
    """Input is valid but outside the exact-arithmetic scope of the package."""

    exit_code = 3


class IndistinguishableModuliError(UnsupportedError):
    """Eigenvalue moduli could not be separated within the refinement budget.

    Carries the offending enclosures so callers can report them.
    """

    def __init__(self, message, enclosures=None):
        super().__init__(message)
        self.enclosures = enclosures or []


class BudgetError(MonoheightError):
    """A word, bit-size, or iteration budget was exhausted."""

    exit_code = 4

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
