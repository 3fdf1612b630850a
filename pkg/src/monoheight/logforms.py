"""Symbolic linear combinations sum c_p * log p over primes, with exact coefficients.

Coefficients are rational or real quadratic (Quad).  Logarithms of distinct
primes are linearly independent over the algebraic numbers (Baker), so such a
combination is zero exactly when every coefficient is zero; that makes
equality decidable and sign evaluation terminating.
"""

from fractions import Fraction

from mpmath import mp

from .errors import IndistinguishableModuliError
from .precision import default_precision, log_enclosure
from .quadratic import Quad

# Precision ladder for sign decisions; a genuinely nonzero combination of prime
# logarithms separates from 0 long before this runs out.
_SIGN_PRECISIONS = (128, 256, 512, 1024, 2048)


def _as_quad(c) -> Quad:
    return c if isinstance(c, Quad) else Quad(Fraction(c))


class LogLinear:
    """Immutable sum of c_p * log p; the empty sum is exact zero."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for p, c in (coeffs or {}).items():
            c = _as_quad(c)
            if c != Quad(0):
                clean[int(p)] = c
        self.coeffs = dict(sorted(clean.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            s = out.get(p, Quad(0)) + c
            if s == Quad(0):
                out.pop(p, None)
            else:
                out[p] = s
        return LogLinear(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        factor = _as_quad(factor)
        return LogLinear({p: c * factor for p, c in self.coeffs.items()})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, LogLinear) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def enclosure(self, prec=None) -> tuple[Fraction, Fraction]:
        """Rigorous rational interval for the value."""
        prec = prec or default_precision()
        lo = Fraction(0)
        hi = Fraction(0)
        for p, c in self.coeffs.items():
            clo, chi = c.enclosure(prec)
            llo, lhi = log_enclosure(Fraction(p), prec)
            # log p > 0, so only the coefficient's sign matters for orientation
            products = (clo * llo, clo * lhi, chi * llo, chi * lhi)
            lo += min(products)
            hi += max(products)
        return lo, hi

    def evaluate(self, prec=None):
        """mpf value at the given binary precision."""
        prec = prec or default_precision()
        with mp.workprec(prec):
            total = mp.mpf(0)
            for p, c in self.coeffs.items():
                total += c.to_mpf(prec) * mp.log(p)
            return total

    def sign(self) -> int:
        """Exact sign; 0 only for the identically zero form."""
        if self.is_zero:
            return 0
        for prec in _SIGN_PRECISIONS:
            lo, hi = self.enclosure(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        raise IndistinguishableModuliError(
            "sign of log-linear form did not separate from zero", [self.enclosure(_SIGN_PRECISIONS[-1])]
        )

    def compare(self, other) -> int:
        return (self - other).sign()

    def max_with_zero(self):
        """max(self, 0) decided exactly."""
        return self if self.sign() > 0 else LogLinear()

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for p, c in self.coeffs.items():
            cs = str(c)
            if cs == "1":
                parts.append(f"log {p}")
            elif cs == "-1":
                parts.append(f"-log {p}")
            elif c.is_rational or cs.startswith("("):
                parts.append(f"{cs}*log {p}")
            else:
                parts.append(f"({cs})*log {p}")
        out = parts[0]
        for piece in parts[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __repr__(self):
        return f"LogLinear({self.coeffs!r})"
