"""Canonical heights for monomial maps: closed form via the scaled power
limit, truncated orbit estimators, orbit finiteness classification, and the
arithmetic degree estimator.

The closed form is h_hat(P) = sum over places of max(0, components of
B log||P||_v) with B the limit of A^n/(n^l rho^n); when B has exact quadratic
entries the whole height is an exact linear form in prime logarithms.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from mpmath import mp, mpf

from .errors import BudgetError, InputError, UnsupportedError
from .jordan import jordan_profile, limit_matrix_B
from .logforms import LogLinear
from .matrices import IntMatrix
from .points import HeightValue, LogProfile, PointGm, log_profile, weil_height
from .polys import cyclotomic_index
from .precision import default_precision, real_str
from .quadratic import Quad

DEFAULT_WORD_BUDGET = 10**6


def _as_matrix_list(F):
    if isinstance(F, IntMatrix):
        return [F]
    # accept a SystemF without importing it (systems imports this module)
    mats = list(getattr(F, "matrices", F))
    if not mats or not all(isinstance(m, IntMatrix) for m in mats):
        raise InputError("expected an IntMatrix or a nonempty list of them")
    if len({m.n for m in mats}) != 1:
        raise InputError("all maps in a system must share one dimension")
    return mats


def canonical_height_closed(A: IntMatrix, P: PointGm, tol=1e-12, prec=None) -> HeightValue:
    """h_hat for a single monomial map; exact symbolic value when possible.

    Exactness follows the limit matrix: rational or quadratic dominant
    eigenvalues give a LogLinear with coefficients in the same field, anything
    else a certified enclosure of width <= tol.
    """
    prec = prec or default_precision()
    if A.n != P.n:
        raise InputError("matrix dimension does not match point dimension")
    prof = log_profile(P)
    if prof.is_torsion():
        b = limit_matrix_B(A, tol=tol, prec=prec)  # validate support, then exact 0
        return HeightValue.zero()
    # scale the B tolerance by the profile mass so the final width is <= tol
    mass = 0.0
    for pl, vec in prof.vals.items():
        mass += 2.0 * sum(abs(v) for v in vec) * math.log(pl.p)
    tol_b = tol / (4.0 * (mass + 1.0))
    b = limit_matrix_B(A, tol=tol_b, prec=prec)
    if b.exact:
        return HeightValue.from_loglinear(_closed_exact(b.entries, prof))
    return _closed_numeric(b, prof, tol, prec)


def _closed_exact(entries, prof: LogProfile) -> LogLinear:
    n = prof.n
    total = LogLinear({})
    zero = Quad(0)
    for pl, vec in prof.vals.items():
        best = zero
        for i in range(n):
            w = sum((entries[i][j] * Quad(-vec[j]) for j in range(n)), Quad(0))
            if best < w:
                best = w
        if best != zero:
            total = total + LogLinear({pl.p: best})
    candidates = []
    for i in range(n):
        coeffs = {}
        for pl, vec in prof.vals.items():
            c = sum((entries[i][j] * Quad(vec[j]) for j in range(n)), Quad(0))
            if c != zero:
                coeffs[pl.p] = c
        candidates.append(LogLinear(coeffs))
    best = LogLinear({})
    for cand in candidates:
        if best.compare(cand) < 0:
            best = cand
    return total + best


def _closed_numeric(b, prof: LogProfile, tol, prec: int) -> HeightValue:
    n = prof.n
    with mp.workprec(prec + 32):
        logs = {pl: mp.log(pl.p) for pl in prof.vals}
        err = mpf(0)
        total = mpf(0)
        width = b.width
        # finite places
        for pl, vec in prof.vals.items():
            u = [-v * logs[pl] for v in vec]
            row_err = width * mp.fsum(abs(x) for x in u)
            vals = [mp.fsum(b.entries[i][j] * u[j] for j in range(n)) for i in range(n)]
            m = max(vals + [mpf(0)])
            total += m
            err += row_err
        # archimedean place
        u = [mp.fsum(vec[j] * logs[pl] for pl, vec in prof.vals.items()) for j in range(n)]
        row_err = width * mp.fsum(abs(x) for x in u)
        vals = [mp.fsum(b.entries[i][j] * u[j] for j in range(n)) for i in range(n)]
        total += max(vals + [mpf(0)])
        err += row_err
        err += abs(total) * mpf(2) ** (16 - prec) + mpf(2) ** (16 - prec)
        return HeightValue.from_interval(total - err, total + err)


@dataclass
class TruncatedEstimate:
    """Normalized height sums over all words up to length n, plus a tail max.

    The underlying sequence is a limsup with no convergence guarantee, so the
    full sequence is part of the result; `estimate` is the max over the last
    ceil(n/4) entries.
    """

    values: list
    estimate: object
    tail_window: int
    n: int
    k: int
    variant: str
    l: int
    delta_str: str
    word_count: int
    exact_level_sums: list = field(default_factory=list)  # one LogLinear per level

    def is_exact_zero(self) -> bool:
        return all(s.is_zero for s in self.exact_level_sums)

    def to_json(self):
        return {
            "variant": self.variant,
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "delta": self.delta_str,
            "estimate": real_str(self.estimate, 15),
            "tail_window": self.tail_window,
            "word_count": self.word_count,
            "values": [real_str(v, 15) for v in self.values],
        }


def _delta_and_l(mats, delta, l_override):
    if delta is None:
        if len(mats) == 1:
            jp = jordan_profile(mats[0])
            delta_mpf = jp.rho.to_mpf(default_precision())
            delta_str = jp.rho.exact_str() or real_str(delta_mpf, 20)
            l = jp.l if l_override is None else l_override
            return delta_mpf, delta_str, l
        raise InputError("multi-map systems need delta (use the system analyzer)")
    if hasattr(delta, "to_mpf"):
        delta_mpf = delta.to_mpf(default_precision())
        delta_str = getattr(delta, "exact_str", lambda: None)() or real_str(delta_mpf, 20)
    else:
        delta_mpf = mpf(delta) if not isinstance(delta, Fraction) else mpf(delta.numerator) / delta.denominator
        delta_str = real_str(delta_mpf, 20)
    l = l_override if l_override is not None else (jordan_profile(mats[0]).l if len(mats) == 1 else 0)
    return delta_mpf, delta_str, l


def _level_states(mats, prof: LogProfile):
    """Iterate levels: dict state_key -> (profile, word multiplicity)."""
    level = {prof.state_key(): (prof, 1)}
    while True:
        nxt = {}
        for _, (state, count) in level.items():
            for M in mats:
                image = state.transport(M)
                key = image.state_key()
                if key in nxt:
                    nxt[key] = (image, nxt[key][1] + count)
                else:
                    nxt[key] = (image, count)
        level = nxt
        yield level


def canonical_height_truncated(
    F,
    P: PointGm,
    n: int,
    variant: str = "summed",
    l_override=None,
    delta=None,
    word_budget: int = DEFAULT_WORD_BUDGET,
    prec=None,
) -> TruncatedEstimate:
    """Word sums of Weil heights, exactly, divided by the variant's normalizer.

    variant "summed" normalizes by n^l delta^n; "averaged" additionally by k^n
    (the per-word average rather than the level sum).
    """
    prec = prec or default_precision()
    mats = _as_matrix_list(F)
    k = len(mats)
    if n < 1:
        raise InputError("n must be >= 1")
    if variant not in ("summed", "averaged"):
        raise InputError("variant must be 'summed' or 'averaged'")
    if k**n > word_budget:
        raise BudgetError(f"k^n = {k}^{n} exceeds the word budget {word_budget}")
    delta_mpf, delta_str, l = _delta_and_l(mats, delta, l_override)
    prof = log_profile(P)
    values = []
    level_sums = []
    words = 0
    with mp.workprec(prec + 32):
        logs = {}
        gen = _level_states(mats, prof)
        for nu in range(1, n + 1):
            level = next(gen)
            words += k**nu
            coeffs = {}
            for _, (state, count) in level.items():
                h = weil_height(state).symbolic
                for p, q in h.coeffs.items():
                    coeffs[p] = coeffs.get(p, Fraction(0)) + q.a * count
            coeffs = {p: c for p, c in coeffs.items() if c}
            level_sums.append(LogLinear({p: Quad(c) for p, c in coeffs.items()}))
            s = mpf(0)
            for p, c in coeffs.items():
                if p not in logs:
                    logs[p] = mp.log(p)
                s += (mpf(c.numerator) / c.denominator) * logs[p]
            norm = mpf(nu) ** l * delta_mpf**nu
            if variant == "averaged":
                norm *= mpf(k) ** nu
            values.append(s / norm)
    window = max(1, math.ceil(n / 4))
    estimate = max(values[-window:])
    return TruncatedEstimate(
        values=values,
        estimate=estimate,
        tail_window=window,
        n=n,
        k=k,
        variant=variant,
        l=l,
        delta_str=delta_str,
        word_count=words,
        exact_level_sums=level_sums,
    )


@dataclass
class OrbitVerdict:
    """Finite(preperiod, period) / Infinite(certificate) / Unknown(budget)."""

    status: str  # "finite" | "infinite" | "unknown"
    preperiod: int = None
    period: int = None
    orbit_size: int = None
    certificate: str = None
    hhat: HeightValue = None
    zero_height_dim_bound: int = None
    budget: int = None

    def to_json(self):
        out = {"status": self.status}
        if self.status == "finite":
            out["preperiod"] = self.preperiod
            out["period"] = self.period
            out["orbit_size"] = self.orbit_size
        if self.certificate:
            out["certificate"] = self.certificate
        if self.hhat is not None:
            out["canonical_height"] = self.hhat.to_json()
        if self.zero_height_dim_bound is not None:
            out["zero_height_subgroup_dim_bound"] = self.zero_height_dim_bound
        if self.status == "unknown":
            out["budget"] = self.budget
        return out


def _torsion_order_lcm(A: IntMatrix) -> int:
    """lcm of the orders of root-of-unity eigenvalues (1 when there are none)."""
    from .matrices import charpoly, factor_over_q

    M = 1
    for g, _ in factor_over_q(charpoly(A)):
        idx = cyclotomic_index(g)
        if idx:
            M = lcm(M, idx)
    return M


def _valuations_eventually_fixed(A: IntMatrix, prof: LogProfile):
    """Exact test: every valuation vector sits in ker(A^M - I)."""
    M = _torsion_order_lcm(A)
    power = A.pow(M)
    for pl, vec in prof.vals.items():
        if tuple(power.vec(list(vec))) != tuple(vec):
            return False, M, pl
    return True, M, None


def _enumerate_orbit(mats, prof: LogProfile, budget: int):
    """(preperiod, period) for k=1; closure size for k>1; None if budget hit."""
    if len(mats) == 1:
        seen = {prof.state_key(): 0}
        state = prof
        for step in range(1, budget + 1):
            state = state.transport(mats[0])
            key = state.state_key()
            if key in seen:
                first = seen[key]
                return first, step - first, step
            seen[key] = step
        return None
    seen = {prof.state_key()}
    frontier = [prof]
    while frontier:
        if len(seen) > budget:
            return None
        nxt = []
        for state in frontier:
            for M in mats:
                image = state.transport(M)
                key = image.state_key()
                if key not in seen:
                    seen.add(key)
                    nxt.append(image)
        frontier = nxt
    return 0, len(seen), len(seen)


def classify_orbit(F, P: PointGm, budget: int = 65536) -> OrbitVerdict:
    """Decide orbit finiteness; exact for a single map.

    Single map: the valuation orbit is finite iff every valuation vector is
    fixed by A^M, M the lcm of root-of-unity eigenvalue orders (A is
    invertible over Q, so there are no valuation-space transients); signs
    always move in a finite space.  Systems fall back to per-generator escape
    tests plus breadth-first closure within the budget.
    """
    mats = _as_matrix_list(F)
    prof = log_profile(P)
    if len(mats) == 1:
        A = mats[0]
        ok, M, witness_place = _valuations_eventually_fixed(A, prof)
        hhat = None
        try:
            hhat = canonical_height_closed(A, P)
        except (UnsupportedError, BudgetError):
            pass
        bound = None
        if hhat is not None and hhat.exact and hhat.is_zero():
            bound = A.n - jordan_profile(A).rbar
        if ok:
            result = _enumerate_orbit(mats, prof, budget)
            if result is None:
                return OrbitVerdict(status="unknown", budget=budget, hhat=hhat,
                                    zero_height_dim_bound=bound)
            pre, per, size = result
            return OrbitVerdict(
                status="finite", preperiod=pre, period=per, orbit_size=size,
                hhat=hhat, zero_height_dim_bound=bound,
            )
        cert = _escape_certificate(A, prof, witness_place, M)
        return OrbitVerdict(status="infinite", certificate=cert, hhat=hhat,
                            zero_height_dim_bound=bound)
    for i, A in enumerate(mats):
        ok, M, witness_place = _valuations_eventually_fixed(A, prof)
        if not ok:
            cert = _escape_certificate(A, prof, witness_place, M)
            return OrbitVerdict(status="infinite",
                                certificate=f"generator {i + 1} alone escapes: {cert}")
    result = _enumerate_orbit(mats, prof, budget)
    if result is None:
        return OrbitVerdict(status="unknown", budget=budget)
    pre, per, size = result
    return OrbitVerdict(status="finite", preperiod=pre, period=per, orbit_size=size)


def _escape_certificate(A: IntMatrix, prof: LogProfile, place, M: int) -> str:
    """Smallest step where some valuation vector visibly outgrows its start."""
    start = max(max(abs(v) for v in vec) for vec in prof.vals.values())
    vecs = {pl: list(vec) for pl, vec in prof.vals.items()}
    for step in range(1, 4096):
        vecs = {pl: A.vec(v) for pl, v in vecs.items()}
        for pl, v in vecs.items():
            m = max(abs(x) for x in v)
            if m > start:
                return (
                    f"valuation vector at p={pl.p} is not fixed by A^{M}; "
                    f"height growth witnessed at step {step} (max valuation {m} > {start})"
                )
    return f"valuation vector at p={place.p} is not fixed by A^{M}"


@dataclass
class ArithDegreeEstimate:
    values: list
    estimate: object
    n: int
    k: int
    word_count: int

    def to_json(self):
        return {
            "estimate": real_str(self.estimate, 15),
            "n": self.n,
            "k": self.k,
            "word_count": self.word_count,
            "values": [real_str(v, 15) for v in self.values],
        }


def arithmetic_degree_estimate(
    F, P: PointGm, n: int, word_budget: int = DEFAULT_WORD_BUDGET, prec=None
) -> ArithDegreeEstimate:
    """(1/k) * (sum over length-nu words of max(1, h))^(1/nu), for nu <= n."""
    prec = prec or default_precision()
    mats = _as_matrix_list(F)
    k = len(mats)
    if n < 1:
        raise InputError("n must be >= 1")
    if k**n > word_budget:
        raise BudgetError(f"k^n = {k}^{n} exceeds the word budget {word_budget}")
    prof = log_profile(P)
    values = []
    words = 0
    with mp.workprec(prec + 32):
        logs = {}
        gen = _level_states(mats, prof)
        for nu in range(1, n + 1):
            level = next(gen)
            words += k**nu
            s = mpf(0)
            for _, (state, count) in level.items():
                h = weil_height(state).symbolic
                hv = mpf(0)
                for p, q in h.coeffs.items():
                    if p not in logs:
                        logs[p] = mp.log(p)
                    hv += (mpf(q.a.numerator) / q.a.denominator) * logs[p]
                s += max(mpf(1), hv) * count
            values.append(mp.root(s, nu) / k)
    return ArithDegreeEstimate(values=values, estimate=values[-1], n=n, k=k, word_count=words)
