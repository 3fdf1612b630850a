"""Exact rational arithmetic over the places of Q: factorizations, valuations, log-scale scalars.

Finite-place data is kept as exact integer valuations; only the archimedean
absolute value ever touches floating point, and then at a caller-controlled
precision.
"""

from dataclasses import dataclass
from fractions import Fraction

import sympy
from mpmath import mp, mpf

from .errors import InputError
from .precision import default_precision

Rat = Fraction


@dataclass(frozen=True)
class Place:
    """A place of Q: a finite prime p, or the archimedean absolute value (p is None)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not sympy.isprime(self.p):
            raise InputError(f"{self.p} is not prime")

    @property
    def is_finite(self):
        return self.p is not None

    def __str__(self):
        return "oo" if self.p is None else str(self.p)


ARCHIMEDEAN = Place(None)


def factor_rational(x: Rat) -> dict[int, int]:
    """Signed prime factorization of a nonzero rational, sign discarded.

    Returns {p: e_p} with x = sign(x) * prod p^e_p exactly and every e_p nonzero.

    Examples
    ========
    >>> factor_rational(Fraction(12, 5))
    {2: 2, 3: 1, 5: -1}
    >>> factor_rational(Fraction(1))
    {}
    """
    if x == 0:
        raise InputError("cannot factor zero")
    out: dict[int, int] = {}
    for p, e in sympy.factorint(x.numerator).items():
        if p > 0:
            out[p] = out.get(p, 0) + e
    for p, e in sympy.factorint(x.denominator).items():
        out[p] = out.get(p, 0) - e
    return dict(sorted((p, e) for p, e in out.items() if e != 0))


def rational_from_factorization(sign: int, factors: dict[int, int]) -> Rat:
    """Inverse of factor_rational given the sign; exact round trip."""
    if sign not in (1, -1):
        raise InputError("sign must be +1 or -1")
    x = Fraction(sign)
    for p, e in factors.items():
        x *= Fraction(p) ** e
    return x


def valuation(x: Rat, p: int) -> int:
    """p-adic valuation v_p(x) of a nonzero rational."""
    if x == 0:
        raise InputError("valuation of zero is undefined")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def log_abs_at_place(x: Rat, v: Place, prec: int | None = None):
    """log of the normalized absolute value of x at the place v.

    Finite p: returns -v_p(x) * log p.  Archimedean: returns log|x|.
    """
    if x == 0:
        raise InputError("zero has no absolute value logarithm")
    prec = prec or default_precision()
    with mp.workprec(prec):
        if v.is_finite:
            return -valuation(x, v.p) * mp.log(v.p)
        return mp.log(abs(mpf(x.numerator)) / mpf(x.denominator))


def parse_rational(text: str) -> Rat:
    """Parse "p" or "p/q" (ASCII, no whitespace) into an exact rational."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {text!r}") from exc
    return value


def format_rational(x: Rat) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class NegLogScalar:
    """A positive real x <= 1 stored as -log x, for magnitudes far below float range.

    Products add neg_logs; order is reversed: x < y iff neg_log(x) > neg_log(y).
    """

    __slots__ = ("neg_log",)

    def __init__(self, neg_log):
        neg_log = mp.mpf(neg_log)
        if neg_log < 0:
            raise InputError("NegLogScalar requires neg_log >= 0 (value <= 1)")
        self.neg_log = neg_log

    @classmethod
    def from_value(cls, x: Fraction):
        if x <= 0 or x > 1:
            raise InputError("from_value needs 0 < x <= 1")
        return cls(-mp.log(mpf(x.numerator) / mpf(x.denominator)))

    def __mul__(self, other):
        return NegLogScalar(self.neg_log + other.neg_log)

    def __lt__(self, other):
        return self.neg_log > other.neg_log

    def __le__(self, other):
        return self.neg_log >= other.neg_log

    def __eq__(self, other):
        return isinstance(other, NegLogScalar) and self.neg_log == other.neg_log

    def __hash__(self):
        return hash(("neglog", str(self.neg_log)))

    def log10_neg_log(self):
        """log10 of -log x; the scale on which these constants are comparable."""
        if self.neg_log == 0:
            return mp.mpf("-inf")
        return mp.log(self.neg_log) / mp.log(10)

    def __repr__(self):
        return f"NegLogScalar(neg_log={mp.nstr(self.neg_log, 10)})"
