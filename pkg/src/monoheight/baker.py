"""Effective lower-bound constants for canonical heights of non-preperiodic points.

The route is classical: a Baker-type lower bound for linear forms in
logarithms of algebraic numbers is threaded through the Jordan data of the
map, producing an explicit constant C > 0 with hhat(P) >= C whenever the
orbit of P is infinite.  C is far below float range, so every constant here
is carried as -log C (see NegLogScalar) and reported on the log10(-log C)
scale, where values are comparable.

All height inputs are exact: naive heights are integer combinations of logs
of primes, Jordan entry heights come with certified enclosures, and the
integer ceilings that enter exponents are decided by interval refinement,
never by float rounding.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, factorial, lcm
from operator import index as _as_int
from typing import NamedTuple

from .errors import InputError, UnsupportedError
from .precision import default_precision, fraction_to_mpf, mp, real_str
from .rationals import NegLogScalar
from .matrices import CertifiedReal, IntMatrix, charpoly, factor_over_q
from .jordan import jordan_basis, jordan_profile
from .points import PointGm, log_profile, weil_height_of_point
from .heights import canonical_height_closed
from .scalars import AlgebraicScalar, scalar_heights  # noqa: F401  (re-exported)


class C11(NamedTuple):
    """The combinatorial constant 2^(8n+53) n^(2n) from the linear-forms bound."""

    value: int
    log: object  # mpf of log(value)


def baker_c11(n: int, prec=None) -> C11:
    """Exact value of 2^(8n+53) * n^(2n) for n >= 1 logarithm forms.

    Examples
    ========
    >>> baker_c11(1).value == 2**61
    True
    >>> baker_c11(2).value == 2**73
    True
    """
    try:
        n = _as_int(n)
    except TypeError:
        raise InputError("the constant is defined for an integer number of logs n >= 1")
    if n < 1:
        raise InputError("the constant is defined for an integer number of logs n >= 1")
    value = 2 ** (8 * n + 53) * n ** (2 * n)
    prec = prec or default_precision()
    with mp.workprec(prec):
        lg = (8 * n + 53) * mp.log(2) + 2 * n * mp.log(n)
    return C11(value, lg)


@dataclass(frozen=True)
class LinearFormBound:
    """|Lambda| >= exp(-U) for a nonzero linear form in logarithms.

    U is reported as a positive magnitude; the bound itself is the
    NegLogScalar with neg_log = U.
    """

    U: object  # mpf
    n: int
    degree: int
    log_heights: tuple  # log A_j, mpf
    log_b_height: object
    clamped_height_log: object  # log A with A = max(A_1..A_n, e^e)
    hypotheses: dict
    note: str

    @property
    def bound(self) -> NegLogScalar:
        return NegLogScalar(self.U)

    def to_json(self):
        return {
            "U": real_str(self.U, 20),
            "n": self.n,
            "degree": self.degree,
            "hypotheses": dict(self.hypotheses),
            "note": self.note,
        }


def _as_mpf(x, prec):
    if isinstance(x, Fraction):
        return fraction_to_mpf(x, prec)
    return mp.mpf(x)


def linear_form_bound_exponent(degree, heights, b_height, prec=None) -> LinearFormBound:
    """Exponent U with |Lambda| >= exp(-U) for Lambda = sum b_j log a_j != 0.

    degree: degree of the number field containing the a_j.
    heights: per-number height bounds A_j, each required to satisfy
    log A_j >= n (n = number of forms); b_height: bound B >= 1 on the
    integer coefficients.  U = c11(n) * degree^(n+2) * prod_j log A_j *
    (log B + log log A), where A = max(A_1, ..., A_n, e^e); the e^e floor
    keeps log log A >= 1.
    """
    prec = prec or default_precision()
    n = len(heights)
    if n < 1:
        raise InputError("at least one height bound is needed")
    if degree < 1:
        raise InputError("degree must be a positive integer")
    with mp.workprec(prec):
        hs = [_as_mpf(a, prec) for a in heights]
        b = _as_mpf(b_height, prec)
        slack = mp.mpf(2) ** (-(prec // 2))
        checks = {}
        for j, a in enumerate(hs):
            if a <= 1:
                raise InputError(f"height bound A_{j + 1} must exceed 1")
            checks[f"log_A_{j + 1} >= n"] = bool(mp.log(a) >= n * (1 - slack))
        checks["B >= 1"] = bool(b >= 1 - slack)
        for name, ok in checks.items():
            if not ok:
                raise InputError(f"hypothesis failed: {name}")
        if b < 1:
            b = mp.mpf(1)
        clamp = mp.e**mp.e
        a_max = max(hs + [clamp])
        u = mp.mpf(baker_c11(n, prec).value)
        u *= mp.mpf(degree) ** (n + 2)
        for a in hs:
            u *= mp.log(a)
        u *= mp.log(b) + mp.log(mp.log(a_max))
        log_hs = tuple(mp.log(a) for a in hs)
        log_b = mp.log(b)
        log_a_max = mp.log(a_max)
    note = (
        "U is the positive magnitude of the exponent; the bound reads "
        "|Lambda| >= exp(-U).  A is floored at e^e so log log A >= 1."
    )
    return LinearFormBound(u, n, degree, log_hs, log_b, log_a_max, checks, note)


def _cleared_representative(P: PointGm):
    """Scale P by the lcm of coordinate denominators; both points are reported."""
    m = lcm(*(c.denominator for c in P.coords))
    if m == 1:
        return P, 1
    return PointGm(tuple(c * m for c in P.coords)), m


def _ceil_shifted_height(const: int, mult, h, cap=1 << 14) -> int:
    """Smallest integer >= const + mult * h, decided from exact enclosures.

    h is a HeightValue; const + mult*h can only be an integer when h = 0
    (a nonzero integer combination of logs of primes is irrational), so the
    refinement terminates.
    """
    if h.exact and h.symbolic.is_zero:
        return const
    prec = 128
    while prec <= cap:
        lo, hi = h.enclosure(prec)
        cl = int(ceil(const + mult * lo))
        ch = int(ceil(const + mult * hi))
        if cl == ch:
            return cl
        prec *= 2
    raise UnsupportedError("could not separate a height-derived exponent from an integer")


@dataclass(frozen=True)
class BakerInputs:
    """Everything the constant depends on, with exact provenance."""

    n: int  # torus dimension
    field_degree: int  # [K:Q], 1 or 2 (K = field of the Jordan basis)
    h_point: object  # HeightValue of the cleared representative
    h_field: object  # mpf of [K:Q] * h
    r: int
    l: int
    rho: object  # CertifiedReal
    entry_height_log: object  # mpf, max over Jordan entries of log H_mult
    det_inv_height_log: object  # mpf, log H_mult(1/det J)
    support_primes: tuple  # T_0: primes dividing a cleared coordinate
    point: PointGm
    cleared_point: PointGm
    clearing_factor: int

    def to_json(self):
        return {
            "dimension": self.n,
            "field_degree": self.field_degree,
            "h": self.h_point.str15(),
            "h_field": real_str(self.h_field, 15),
            "r": self.r,
            "l": self.l,
            "support_primes": list(self.support_primes),
            "point": self.point.to_json(),
            "cleared_point": self.cleared_point.to_json(),
            "clearing_factor": self.clearing_factor,
        }


@dataclass(frozen=True)
class BakerConstants:
    """The effective constant C with hhat(P) >= C, in log space.

    neg_log_c is -log C; the three intermediate magnitudes are kept as logs
    (they already overflow floats as plain numbers for modest heights).
    """

    neg_log_c: NegLogScalar
    n_star: int
    a_prime_log: object  # mpf
    e_prime: int  # exact
    e_prime_log: object
    d_prime_log: object
    path: str  # "repeated-root" (l >= 1) or "irreducible" (l = 0)
    inputs: BakerInputs
    hypotheses: dict
    hhat: object  # HeightValue of the original point
    height_exceeds_bound: bool
    margin_neg_log: object  # mpf; -log C - (-log hhat), > 0 when hhat > C
    notes: tuple

    def to_json(self):
        return {
            "log10_neg_log_C": real_str(self.neg_log_c.log10_neg_log(), 20),
            "A_prime_log": real_str(self.a_prime_log, 20),
            "E_prime_log": real_str(self.e_prime_log, 20),
            "D_prime_log": real_str(self.d_prime_log, 20),
            "hypotheses": dict(self.hypotheses),
            "n_star": self.n_star,
            "path": self.path,
            "inputs": self.inputs.to_json(),
            "canonical_height": self.hhat.str15(),
            "height_exceeds_bound": self.height_exceeds_bound,
            "margin_neg_log": real_str(self.margin_neg_log, 20),
            "notes": list(self.notes),
        }


def _baker_inputs(A: IntMatrix, P: PointGm, prec) -> tuple:
    if A.n != P.n:
        raise InputError("matrix and point dimensions differ")
    prof = jordan_profile(A)
    if prof.rho.compare(CertifiedReal.from_fraction(1)) <= 0:
        raise UnsupportedError("rho <= 1: the height lower bound needs a dominant modulus above 1")
    jb = jordan_basis(A)

    cp = charpoly(A)
    facs = factor_over_q(cp)
    irreducible = len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree == A.n
    if prof.l >= 1:
        path = "repeated-root"
    elif irreducible:
        path = "irreducible"
    else:
        raise UnsupportedError(
            "no effective constant from this method: it needs either a repeated "
            "dominant root (l >= 1) or an irreducible characteristic polynomial"
        )

    field_degree = 2 if jb.field_d else 1
    cleared, factor = _cleared_representative(P)
    h = weil_height_of_point(cleared)
    hlo, hhi = h.enclosure(prec + 32)
    h_field = field_degree * fraction_to_mpf((hlo + hhi) / 2, prec)

    elo, ehi = jb.max_entry_mult_log
    entry_log = fraction_to_mpf((elo + ehi) / 2, prec)
    dlo, dhi = jb.det_inv_scalar.h_mult_log_enclosure(prec)
    det_log = fraction_to_mpf((dlo + dhi) / 2, prec)

    support = tuple(sorted(pl.p for pl in log_profile(cleared).vals if pl.is_finite))
    inputs = BakerInputs(
        A.n, field_degree, h, h_field, prof.r, prof.l, prof.rho,
        entry_log, det_log, support, P, cleared, factor,
    )
    return inputs, prof, path, h


def effective_constants(A: IntMatrix, P: PointGm, prec=None) -> BakerConstants:
    """The explicit constant C > 0 with hhat(P) >= C for infinite orbits.

    With n* = ceil(4 + N h_K(P)) and K the (at most quadratic) field of the
    Jordan basis:

        log A' = (2 + N h_K) * 12 * (4 + N h_K)
        E'     = c11(n*) * [K:Q]^(n* + 2)
        D'     = {4 N r [K:Q] (3 + N h_K) (N-1)! * Hmax * Hdet}^(2 N^2 r [K:Q]^2)
        -log C = log(2 rho^l l!) + E' * (log A')^(n*) * (log D' + log log A')

    where Hmax is the largest multiplicative height of a Jordan-basis entry
    and Hdet that of 1/det J.  Heights refer to the representative of P
    cleared to integral coordinates; both representatives are reported.
    """
    prec = prec or max(default_precision(), 192)
    with mp.workprec(prec):
        inputs, prof, path, h = _baker_inputs(A, P, prec)
        N, kdeg = inputs.n, inputs.field_degree
        r, l = inputs.r, inputs.l

        n_star = _ceil_shifted_height(4, N * kdeg, h)
        hk = inputs.h_field

        a_prime_log = (2 + hk * N) * 12 * (4 + hk * N)
        e_prime = baker_c11(n_star, prec).value * kdeg ** (n_star + 2)
        e_prime_log = mp.log(e_prime)
        base_log = (
            mp.log(4 * N * r * kdeg * factorial(N - 1))
            + mp.log(3 + hk * N)
            + inputs.entry_height_log
            + inputs.det_inv_height_log
        )
        d_prime_log = 2 * N**2 * r * kdeg**2 * base_log

        rho_log = mp.log(prof.rho.to_mpf(prec))
        neg_log = (
            mp.log(2) + l * rho_log + mp.log(factorial(l))
            + mp.mpf(e_prime) * a_prime_log**n_star * (d_prime_log + mp.log(a_prime_log))
        )

        hhat = canonical_height_closed(A, P, prec=prec)
        hlo, hhi = hhat.enclosure(prec)
        exceeds = hlo > 0
        if exceeds:
            margin = neg_log + mp.log(fraction_to_mpf(hlo, prec))
            exceeds = bool(margin > 0)
        else:
            margin = mp.mpf("-inf")

        hypotheses = {
            "rho > 1": True,
            "jordan_basis": "exact",
            "path": path,
            "support_size <= n_star": len(inputs.support_primes) <= n_star,
            "canonical_height_positive": bool(hlo > 0),
        }
        notes = (
            "heights are computed for the representative with integral coordinates; "
            "clearing denominators can change the naive height and both points are listed",
        )
        out = BakerConstants(
            NegLogScalar(neg_log), n_star, a_prime_log, e_prime, e_prime_log,
            d_prime_log, path, inputs, hypotheses, hhat, exceeds, margin, notes,
        )
    return out


@dataclass(frozen=True)
class TowerConstant:
    """Single-formula variant of the constant, tame only in double-log space."""

    neg_log_c: NegLogScalar
    log10_neg_log: object
    c1: object
    inputs: BakerInputs
    hypotheses: dict

    def to_json(self):
        return {
            "log10_neg_log_C": real_str(self.log10_neg_log, 20),
            "C1": real_str(self.c1, 15),
            "hypotheses": dict(self.hypotheses),
            "inputs": self.inputs.to_json(),
        }


def tower_constant(A: IntMatrix, P: PointGm, c1=1, prec=None) -> TowerConstant:
    """Coarser closed form of the height lower bound, one exponential higher.

    -log C = log(2 rho^l l!)
             + {C1 [K:Q]^2 * 16 N^2 r (4 + N h_K)}^(10 (6 + N h_K))
               * log{(4 + N h_K) * C(A) * 4 N r [K:Q] (N-1)!}

    with C(A) = Hmax * Hdet as in effective_constants.  The middle factor
    alone overflows any fixed-exponent float for modest heights, so the
    result is meaningful on the log10(-log C) scale.
    """
    prec = prec or max(default_precision(), 192)
    with mp.workprec(prec):
        inputs, prof, path, _h = _baker_inputs(A, P, prec)
        N, kdeg, r, l = inputs.n, inputs.field_degree, inputs.r, inputs.l
        hk = inputs.h_field
        c1 = _as_mpf(c1, prec)
        if c1 <= 0:
            raise InputError("the leading constant C1 must be positive")

        x = c1 * kdeg**2 * 16 * N**2 * r * (4 + hk * N)
        y = 10 * (6 + hk * N)
        ca_log = inputs.entry_height_log + inputs.det_inv_height_log
        tail_log = mp.log(4 + hk * N) + ca_log + mp.log(4 * N * r * kdeg * factorial(N - 1))
        rho_log = mp.log(prof.rho.to_mpf(prec))
        neg_log = mp.log(2) + l * rho_log + mp.log(factorial(l)) + mp.e ** (y * mp.log(x)) * tail_log
        hypotheses = {"rho > 1": True, "path": path, "C1": real_str(c1, 15)}
        out = TowerConstant(NegLogScalar(neg_log), mp.log(neg_log) / mp.log(10), c1, inputs, hypotheses)
    return out
