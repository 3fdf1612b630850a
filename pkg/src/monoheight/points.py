"""Rational points on the split torus and their valuation-space shadows.

A point is a tuple of nonzero rationals.  Everything height-related goes
through LogProfile: per-prime valuation vectors plus coordinate signs.  The
archimedean data needs no separate storage since log|x| = sum_p v_p(x) log p
for nonzero rational x; keeping only integer vectors means monomial maps act
by exact integer matrix-vector products even when the coordinates themselves
would be astronomically large.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .errors import BudgetError, InputError
from .logforms import LogLinear
from .matrices import IntMatrix
from .precision import default_precision, real_str
from .quadratic import Quad
from .rationals import Place, factor_rational, parse_rational


DEFAULT_COORD_BIT_BUDGET = 2**20


@dataclass(frozen=True)
class PointGm:
    coords: tuple

    def __post_init__(self):
        if not self.coords:
            raise InputError("a point needs at least one coordinate")
        norm = []
        for c in self.coords:
            q = Fraction(c)
            if q == 0:
                raise InputError("coordinates must be nonzero")
            norm.append(q)
        object.__setattr__(self, "coords", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.coords)

    @classmethod
    def parse(cls, text: str) -> "PointGm":
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(not p for p in parts):
            raise InputError(f"malformed point {text!r}; expected comma-separated rationals")
        return cls(tuple(parse_rational(p) for p in parts))

    def power(self, d: int) -> "PointGm":
        return PointGm(tuple(c**d for c in self.coords))

    def __str__(self):
        return ",".join(str(c) for c in self.coords)

    def to_json(self):
        return [str(c) for c in self.coords]


@dataclass(frozen=True)
class LogProfile:
    """Valuations v_p(x_j) per prime plus signs; log||x_j||_p = -v_p(x_j) log p."""

    n: int
    vals: dict = field(default_factory=dict)  # Place -> tuple of n ints
    signs: tuple = ()

    def __post_init__(self):
        clean = {}
        for place, vec in self.vals.items():
            if not place.is_finite:
                raise InputError("profiles keep only finite places explicitly")
            vec = tuple(int(v) for v in vec)
            if len(vec) != self.n:
                raise InputError("valuation vector length mismatch")
            if any(vec):
                clean[place] = vec
        object.__setattr__(self, "vals", clean)
        if len(self.signs) != self.n or any(s not in (1, -1) for s in self.signs):
            raise InputError("signs must be a +-1 tuple matching the dimension")

    def support(self):
        return sorted(self.vals, key=lambda pl: pl.p)

    def valuation(self, place: Place, j: int) -> int:
        return self.vals.get(place, (0,) * self.n)[j]

    def arch_loglinear(self, j: int) -> LogLinear:
        """Exact symbolic log|x_j| as an integer combination of prime logs."""
        return LogLinear({pl.p: Quad(vec[j]) for pl, vec in self.vals.items() if vec[j]})

    def product_formula_sum(self, j: int) -> LogLinear:
        """sum_v log||x_j||_v in symbolic form; identically zero."""
        total = self.arch_loglinear(j)
        for pl, vec in self.vals.items():
            total = total + LogLinear({pl.p: Quad(-vec[j])})
        return total

    def transport(self, M: IntMatrix) -> "LogProfile":
        if M.n != self.n:
            raise InputError("matrix dimension does not match profile dimension")
        new_vals = {pl: tuple(M.vec(list(vec))) for pl, vec in self.vals.items()}
        bits = [0 if s == 1 else 1 for s in self.signs]
        new_bits = kernels.mat_vec(M.row_lists(), bits)
        new_signs = tuple(1 if b % 2 == 0 else -1 for b in new_bits)
        return LogProfile(n=self.n, vals=new_vals, signs=new_signs)

    def state_key(self):
        """Hashable exact state for orbit enumeration."""
        items = tuple(sorted((pl.p, vec) for pl, vec in self.vals.items()))
        return (items, self.signs)

    def is_torsion(self) -> bool:
        return not self.vals

    def to_json(self):
        return {
            "dimension": self.n,
            "finite": {str(pl.p): list(vec) for pl, vec in sorted(self.vals.items(), key=lambda kv: kv[0].p)},
            "signs": list(self.signs),
        }


def log_profile(P: PointGm) -> LogProfile:
    vals = {}
    signs = []
    for j, c in enumerate(P.coords):
        signs.append(1 if c > 0 else -1)
        for p, e in factor_rational(c).items():
            vec = vals.setdefault(Place(p), [0] * P.n)
            vec[j] = e
    return LogProfile(n=P.n, vals={pl: tuple(v) for pl, v in vals.items()}, signs=tuple(signs))


def profile_point(prof: LogProfile) -> PointGm:
    """Inverse of log_profile; mainly a test oracle."""
    coords = []
    for j in range(prof.n):
        q = Fraction(prof.signs[j])
        for pl, vec in prof.vals.items():
            q *= Fraction(pl.p) ** vec[j]
        coords.append(q)
    return PointGm(tuple(coords))


def eval_monomial(A: IntMatrix, P: PointGm, bit_budget: int = DEFAULT_COORD_BIT_BUDGET) -> PointGm:
    """Coordinate i becomes prod_j x_j^(a_ij); exact, with a bit-size guard.

    Orbits grow doubly exponentially in coordinate size, so anything beyond a
    few steps should use transport_profile instead; the guard makes that
    failure mode loud.
    """
    if A.n != P.n:
        raise InputError("matrix dimension does not match point dimension")
    sizes = [c.numerator.bit_length() + c.denominator.bit_length() for c in P.coords]
    rows = A.row_lists()
    for i in range(A.n):
        est = sum(abs(rows[i][j]) * sizes[j] for j in range(A.n))
        if est > bit_budget:
            raise BudgetError(
                f"coordinate {i} would need about {est} bits (budget {bit_budget}); "
                "use valuation-space transport for long orbits"
            )
    coords = []
    for i in range(A.n):
        acc = Fraction(1)
        for j in range(A.n):
            e = rows[i][j]
            if e:
                acc *= P.coords[j] ** e
        coords.append(acc)
    return PointGm(tuple(coords))


def transport_profile(M: IntMatrix, prof: LogProfile) -> LogProfile:
    """Exact valuation-space shadow of eval_monomial."""
    return prof.transport(M)


@dataclass
class HeightValue:
    """A nonnegative real height, symbolic when exact.

    symbolic is a LogLinear (rational or quadratic coefficients on prime
    logarithms) when the value is known in closed form; otherwise lo/hi is a
    certified enclosure.
    """

    symbolic: object = None
    lo: object = None
    hi: object = None

    @classmethod
    def from_loglinear(cls, ll: LogLinear) -> "HeightValue":
        return cls(symbolic=ll)

    @classmethod
    def from_interval(cls, lo, hi) -> "HeightValue":
        return cls(symbolic=None, lo=lo, hi=hi)

    @classmethod
    def zero(cls) -> "HeightValue":
        return cls(symbolic=LogLinear({}))

    @property
    def exact(self) -> bool:
        return self.symbolic is not None

    def is_zero(self) -> bool:
        if self.exact:
            return self.symbolic.is_zero
        return self.lo <= 0 <= self.hi

    def enclosure(self, prec=None):
        prec = prec or default_precision()
        if self.exact:
            return self.symbolic.enclosure(prec)
        return (self.lo, self.hi)

    def value(self, prec=None):
        lo, hi = self.enclosure(prec)
        return (lo + hi) / 2

    def __float__(self):
        return float(self.value(80))

    def str15(self) -> str:
        return real_str(self.value(), 15)

    def symbolic_str(self):
        return str(self.symbolic) if self.exact else None

    def to_json(self):
        out = {"decimal": self.str15()}
        if self.exact:
            out["symbolic"] = str(self.symbolic)
        else:
            out["enclosure"] = [real_str(self.lo, 20), real_str(self.hi, 20)]
        return out


def _max_plus_loglinear(candidates) -> LogLinear:
    """Exact max of the candidates and zero, all LogLinear."""
    best = LogLinear({})
    for cand in candidates:
        if best.compare(cand) < 0:
            best = cand
    return best


def weil_height(prof: LogProfile) -> HeightValue:
    """h(P) = sum over places of max(0, max_j log||x_j||_v), exactly.

    Finite place p contributes max(0, -min_j v_p(x_j)) * log p; the
    archimedean place contributes the exact symbolic max of the coordinate
    logs and zero.
    """
    coeffs = {}
    for pl, vec in prof.vals.items():
        c = max(0, -min(vec))
        if c:
            coeffs[pl.p] = Quad(c)
    total = LogLinear(coeffs)
    arch = _max_plus_loglinear(prof.arch_loglinear(j) for j in range(prof.n))
    return HeightValue.from_loglinear(total + arch)


def weil_height_of_point(P: PointGm) -> HeightValue:
    return weil_height(log_profile(P))
