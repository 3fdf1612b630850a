"""Finite systems of monomial maps: word growth tables, dynamical degree
enclosures, reduction certificates, and the combined report.

For a general system the dynamical degree delta = lim max_words rho^(1/n) has
no known algorithm, so it is reported as a two-sided enclosure: any single
word w of length t gives the lower bound rho(w)^(1/t) (powers of w are
admissible words), and degree submultiplicativity gives the Fekete upper
bound min_m maxdeg_m^(1/m).  Recognized families (all-diagonal, or every
generator a polynomial in the first) reduce exactly to a single map psi.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf

from .errors import BudgetError, InputError
from .heights import (
    canonical_height_closed,
    canonical_height_truncated,
    classify_orbit,
)
from .jordan import jordan_profile
from .matrices import (
    CertifiedReal,
    IntMatrix,
    charpoly,
    factor_over_q,
    frac_solve,
    monomial_degree,
    spectral_radius,
    word_product,
)
from .points import PointGm
from .precision import default_precision, real_str

DEFAULT_N_MAX = 12
DEFAULT_WORD_BUDGET = 10**6
DEFAULT_BIT_BUDGET = 2**16


@dataclass(frozen=True)
class SystemF:
    matrices: tuple

    def __post_init__(self):
        mats = tuple(self.matrices)
        if not mats:
            raise InputError("a system needs at least one matrix")
        if not all(isinstance(m, IntMatrix) for m in mats):
            raise InputError("system entries must be integer matrices")
        if len({m.n for m in mats}) != 1:
            raise InputError("all matrices must share one dimension")
        object.__setattr__(self, "matrices", mats)

    @property
    def k(self) -> int:
        return len(self.matrices)

    @property
    def n(self) -> int:
        return self.matrices[0].n

    @classmethod
    def from_json(cls, obj) -> "SystemF":
        try:
            mats = [IntMatrix.from_json(m) for m in obj["matrices"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed system JSON: {exc}") from exc
        if "k" in obj and obj["k"] != len(mats):
            raise InputError("system JSON: k does not match the matrix count")
        return cls(tuple(mats))

    def to_json(self):
        return {"k": self.k, "matrices": [m.to_json() for m in self.matrices]}


def _as_system(F) -> SystemF:
    if isinstance(F, SystemF):
        return F
    if isinstance(F, IntMatrix):
        return SystemF((F,))
    return SystemF(tuple(F))


def _norm_bound(M: IntMatrix) -> int:
    """Cheap upper bound for rho: min of the max absolute row/column sums."""
    rows = M.row_lists()
    r = max(sum(abs(v) for v in row) for row in rows)
    c = max(sum(abs(rows[i][j]) for i in range(M.n)) for j in range(M.n))
    return min(r, c)


class _WordLevels:
    """Prefix-memoized enumeration of word products, level by level."""

    def __init__(self, system: SystemF, word_budget: int, bit_budget: int):
        self.system = system
        self.word_budget = word_budget
        self.bit_budget = bit_budget
        self.words_used = 0
        self.level = [((), IntMatrix.identity(system.n))]

    def advance(self):
        k = self.system.k
        new_count = len(self.level) * k
        if self.words_used + new_count > self.word_budget:
            raise BudgetError(
                f"word budget {self.word_budget} exceeded at {self.words_used + new_count} words"
            )
        nxt = []
        for word, M in self.level:
            for i, gen in enumerate(self.system.matrices):
                prod = M.mul(gen)
                if prod.max_bit_length() > self.bit_budget:
                    raise BudgetError(
                        f"matrix entries exceeded {self.bit_budget} bits in word enumeration"
                    )
                nxt.append((word + (i,), prod))
        self.words_used += new_count
        self.level = nxt
        return nxt


def _level_max_radius(level):
    """(CertifiedReal, word) for the max spectral radius over one level.

    The cheap norm bound prunes words that cannot beat the current certified
    lower bound, so the exact machinery runs on few words per level.
    """
    ranked = sorted(level, key=lambda wm: -_norm_bound(wm[1]))
    best = None
    best_word = None
    for word, M in ranked:
        if best is not None and Fraction(_norm_bound(M)) <= best.lo:
            break
        rho = spectral_radius(M)
        if best is None or best.compare(rho) < 0:
            best, best_word = rho, word
    return best, best_word


def max_word_radius(
    F, n: int, word_budget: int = DEFAULT_WORD_BUDGET, bit_budget: int = DEFAULT_BIT_BUDGET
):
    """Max spectral radius over all k^n words of length n, with one maximizer."""
    system = _as_system(F)
    if n < 1:
        raise InputError("n must be >= 1")
    levels = _WordLevels(system, word_budget, bit_budget)
    for _ in range(n):
        level = levels.advance()
    return _level_max_radius(level)


@dataclass
class GrowthRow:
    n: int
    rho: CertifiedReal
    word: tuple
    maxdeg: int
    deg_word: tuple

    def to_json(self):
        return {
            "n": self.n,
            "rho": self.rho.to_json(),
            "word": [i + 1 for i in self.word],
            "max_degree": self.maxdeg,
            "degree_word": [i + 1 for i in self.deg_word],
        }


@dataclass
class GrowthTable:
    rows: list

    def lower_bound(self, prec=None):
        """max over rows of rho^(1/n): certified lower bound for delta."""
        prec = prec or default_precision()
        best = mpf(1)
        with mp.workprec(prec):
            for row in self.rows:
                v = mp.root(row.rho.to_mpf(prec), row.n)
                if v > best:
                    best = v
        return best

    def upper_bound(self, prec=None):
        """min over rows of maxdeg^(1/m): Fekete bound from submultiplicativity."""
        prec = prec or default_precision()
        best = None
        with mp.workprec(prec):
            for row in self.rows:
                v = mp.root(mpf(row.maxdeg), row.n)
                if best is None or v < best:
                    best = v
        return best

    def to_json(self):
        return [row.to_json() for row in self.rows]


def growth_table(
    F,
    n_max: int = DEFAULT_N_MAX,
    word_budget: int = DEFAULT_WORD_BUDGET,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> GrowthTable:
    system = _as_system(F)
    levels = _WordLevels(system, word_budget, bit_budget)
    rows = []
    for n in range(1, n_max + 1):
        try:
            level = levels.advance()
        except BudgetError:
            if rows:
                break
            raise
        rho, word = _level_max_radius(level)
        maxdeg = None
        deg_word = None
        for w, M in level:
            d = monomial_degree(M)
            if maxdeg is None or d > maxdeg:
                maxdeg, deg_word = d, w
        rows.append(GrowthRow(n=n, rho=rho, word=word, maxdeg=maxdeg, deg_word=deg_word))
    return GrowthTable(rows=rows)


@dataclass
class StarCertificate:
    """Reduction-to-one-map certificate; statuses beyond the recognized
    families are only ever empirical or unknown."""

    status: str  # certified_diagonal | certified_polynomial_family | empirical | unknown
    psi_word: tuple = ()
    t: int = 0
    base_index: int = None
    polynomials: tuple = ()  # Fraction coefficient tuples, ascending, for i >= 2
    n_checked: int = None
    notes: tuple = ()

    @property
    def certified(self) -> bool:
        return self.status in ("certified_diagonal", "certified_polynomial_family")

    def psi_matrix(self, system: SystemF) -> IntMatrix:
        return word_product([system.matrices[i] for i in self.psi_word])

    def to_json(self):
        out = {"status": self.status}
        if self.psi_word:
            out["psi_word"] = [i + 1 for i in self.psi_word]
            out["t"] = self.t
        if self.base_index is not None:
            out["base_index"] = self.base_index + 1
            out["polynomials"] = [_frac_poly_str(c) for c in self.polynomials]
        if self.n_checked is not None:
            out["n_checked"] = self.n_checked
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _frac_poly_str(coeffs) -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            term = str(c)
        else:
            xs = "x" if e == 1 else f"x^{e}"
            if c == 1:
                term = xs
            elif c == -1:
                term = f"-{xs}"
            else:
                term = f"{c}*{xs}"
        terms.append(term)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += ("+" + t) if not t.startswith("-") else t
    return out


def _is_diagonal(M: IntMatrix) -> bool:
    rows = M.row_lists()
    return all(rows[i][j] == 0 for i in range(M.n) for j in range(M.n) if i != j)


def _argmax_radius(mats):
    best = None
    best_i = None
    for i, M in enumerate(mats):
        rho = spectral_radius(M)
        if best is None or best.compare(rho) < 0:
            best, best_i = rho, i
    return best_i, best


def _polynomial_in_base(base: IntMatrix, target: IntMatrix):
    """Coefficients c with target = sum c_m base^m (deg < N), or None."""
    n = base.n
    powers = [IntMatrix.identity(n)]
    for _ in range(n - 1):
        powers.append(powers[-1].mul(base))
    cols = len(powers)
    rows = []
    rhs = []
    tgt = target.row_lists()
    for i in range(n):
        for j in range(n):
            rows.append([Fraction(powers[m].row_lists()[i][j]) for m in range(cols)])
            rhs.append(Fraction(tgt[i][j]))
    sol = frac_solve(rows, rhs)
    if sol is None:
        return None
    return tuple(sol)


def certify_reduction(
    F,
    n_max: int = 8,
    word_budget: int = DEFAULT_WORD_BUDGET,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> StarCertificate:
    """Reduce the system to one map psi when a recognized structure applies.

    All-diagonal families and polynomial families A_i = g_i(A_1) commute
    enough that the single generator of maximal spectral radius realizes the
    growth (t = 1).  Anything else gets at best an empirical check of the
    word-growth inequality up to n_max.
    """
    system = _as_system(F)
    mats = system.matrices
    if all(_is_diagonal(M) for M in mats):
        i, _ = _argmax_radius(mats)
        return StarCertificate(status="certified_diagonal", psi_word=(i,), t=1)
    if system.k == 1:
        return StarCertificate(status="certified_polynomial_family", psi_word=(0,), t=1,
                               base_index=0, polynomials=())
    polys = []
    ok = True
    for M in mats[1:]:
        coeffs = _polynomial_in_base(mats[0], M)
        if coeffs is None:
            ok = False
            break
        polys.append(coeffs)
    if ok:
        i, _ = _argmax_radius(mats)
        return StarCertificate(
            status="certified_polynomial_family", psi_word=(i,), t=1,
            base_index=0, polynomials=tuple(polys),
        )
    # empirical: best single word from the growth table as psi candidate
    table = growth_table(system, n_max=n_max, word_budget=word_budget, bit_budget=bit_budget)
    prec = default_precision()
    best_row = None
    best_val = None
    with mp.workprec(prec):
        for row in table.rows:
            v = mp.root(row.rho.to_mpf(prec), row.n)
            if best_val is None or v > best_val:
                best_val, best_row = v, row
    psi_word = best_row.word
    t = best_row.n
    psi = word_product([mats[i] for i in psi_word])
    l = jordan_profile(psi).l
    delta = best_val  # rho(psi)^(1/t), the candidate value
    with mp.workprec(prec):
        bound_factor = mpf(1) / mpf(t) ** l  # sup_s rho(psi^s)/((ts)^l delta^(ts))
        for row in table.rows:
            lhs = row.rho.to_mpf(prec)
            rhs = bound_factor * mpf(row.n) ** l * delta**row.n
            if lhs > rhs * (1 + mpf(2) ** (24 - prec)):
                return StarCertificate(
                    status="unknown",
                    notes=(f"word-growth inequality fails at n={row.n} for the best candidate",),
                )
    return StarCertificate(status="empirical", psi_word=psi_word, t=t, n_checked=len(table.rows))


@dataclass
class DynamicalDegree:
    lo: object  # mpf
    hi: object  # mpf
    exact: CertifiedReal = None
    certificate: StarCertificate = None
    table: GrowthTable = None

    def value(self):
        if self.exact is not None:
            return self.exact.to_mpf(default_precision())
        return (self.lo + self.hi) / 2

    def to_json(self):
        out = {
            "lower": real_str(self.lo, 20),
            "upper": real_str(self.hi, 20),
        }
        if self.exact is not None:
            out["exact"] = self.exact.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def dynamical_degree(
    F,
    n_max: int = DEFAULT_N_MAX,
    word_budget: int = DEFAULT_WORD_BUDGET,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> DynamicalDegree:
    """Two-sided enclosure of the dynamical degree; exact on certified systems."""
    system = _as_system(F)
    cert = certify_reduction(system, n_max=min(n_max, 8), word_budget=word_budget,
                             bit_budget=bit_budget)
    table = growth_table(system, n_max=n_max, word_budget=word_budget, bit_budget=bit_budget)
    lo = table.lower_bound()
    hi = table.upper_bound()
    exact = None
    if cert.certified and cert.t == 1:
        exact = spectral_radius(cert.psi_matrix(system))
        prec = default_precision()
        # widen at full precision; at ambient 53 bits the products round onto
        # float(rho) and the interval can exclude the true value
        with mp.workprec(prec + 16):
            rho_mpf = exact.to_mpf(prec)
            lo = max(lo, rho_mpf * (1 - mpf(2) ** -96))
            hi = min(hi, rho_mpf * (1 + mpf(2) ** -96))
    if lo > hi:
        lo, hi = hi, lo
    return DynamicalDegree(lo=lo, hi=hi, exact=exact, certificate=cert, table=table)


@dataclass
class CorrectionExponent:
    l: int
    certified: bool
    method: str
    ratios: list = field(default_factory=list)  # (n, rho/(n^l delta^n)) evidence

    def to_json(self):
        out = {"l": self.l, "certified": self.certified, "method": self.method}
        if self.ratios:
            out["ratios"] = [[n, real_str(v, 15)] for n, v in self.ratios]
        return out


def correction_exponent(F, n_max: int = DEFAULT_N_MAX, degree: DynamicalDegree = None) -> CorrectionExponent:
    """Polynomial correction order: exact via the reduced map when certified,
    otherwise the smallest l whose normalized table tail is non-increasing
    (explicitly labeled heuristic)."""
    system = _as_system(F)
    if degree is None:
        degree = dynamical_degree(system, n_max=n_max)
    cert = degree.certificate
    if cert is not None and cert.certified:
        psi = cert.psi_matrix(system)
        return CorrectionExponent(l=jordan_profile(psi).l, certified=True,
                                  method="reduced map jordan profile")
    prec = default_precision()
    table = degree.table
    delta_hi = degree.hi
    with mp.workprec(prec):
        for l in range(0, system.n + 1):
            vals = [(row.n, row.rho.to_mpf(prec) / (mpf(row.n) ** l * delta_hi**row.n))
                    for row in table.rows]
            tail = vals[len(vals) // 2 :]
            if all(tail[i + 1][1] <= tail[i][1] * (1 + mpf(2) ** (16 - prec))
                   for i in range(len(tail) - 1)):
                return CorrectionExponent(l=l, certified=False,
                                          method="heuristic table monotonicity", ratios=vals)
    return CorrectionExponent(l=system.n, certified=False,
                              method="heuristic fallback (no monotone tail found)")


@dataclass
class ReductionReport:
    items: list  # (name, passed: bool, detail: str)

    @property
    def all_pass(self) -> bool:
        return all(p for _, p, _ in self.items)

    def to_json(self):
        return [{"check": n, "pass": p, "detail": d} for n, p, d in self.items]


def check_reduction(F, P: PointGm, n_max: int = DEFAULT_N_MAX, tol=1e-9) -> ReductionReport:
    """Verify the reduction facts on a certified system: degree match,
    correction exponent match, and zero-height transfer to the reduced map."""
    system = _as_system(F)
    degree = dynamical_degree(system, n_max=n_max)
    cert = degree.certificate
    if cert is None or not cert.certified:
        raise InputError("reduction checks need a certified system")
    psi = cert.psi_matrix(system)
    prec = default_precision()
    items = []
    rho_psi = spectral_radius(psi)
    with mp.workprec(prec):
        psi_val = mp.root(rho_psi.to_mpf(prec), cert.t)
        ok_a = degree.lo <= psi_val * (1 + mpf(2) ** -64) and psi_val <= degree.hi * (1 + mpf(2) ** -64)
    items.append(("degree equals reduced-map degree",
                  bool(ok_a), f"delta in [{real_str(degree.lo, 15)}, {real_str(degree.hi, 15)}], "
                              f"rho(psi)^(1/t) = {real_str(psi_val, 15)}"))
    l_psi = jordan_profile(psi).l
    l_sys = correction_exponent(system, n_max=n_max, degree=degree).l
    items.append(("correction exponent matches reduced map",
                  l_sys == l_psi, f"system l = {l_sys}, psi l = {l_psi}"))
    n_feasible = n_max
    while system.k**n_feasible > 4096 and n_feasible > 1:
        n_feasible -= 1
    trunc = canonical_height_truncated(
        list(system.matrices), P, n_feasible, variant="summed",
        delta=degree.exact if degree.exact is not None else degree.hi,
        l_override=l_psi,
    )
    closed = canonical_height_closed(psi, P)
    trunc_zero = float(trunc.estimate) < tol or trunc.is_exact_zero()
    closed_zero = closed.is_zero() or float(closed) < tol
    ok_c = (not trunc_zero) or closed_zero
    items.append(("zero height transfers to reduced map", ok_c,
                  f"truncated estimate {real_str(trunc.estimate, 10)}, "
                  f"reduced-map height {closed.str15()}"))
    return ReductionReport(items=items)


@dataclass
class SystemReport:
    system: SystemF
    point: PointGm
    degree: DynamicalDegree
    correction: CorrectionExponent
    trunc_summed: object
    trunc_averaged: object
    closed_height: object  # HeightValue or None
    verdict: object
    zero_height_dim_bound: int = None
    finiteness_equivalence: str = None  # "applies" | "inapplicable"
    notes: tuple = ()

    def to_json(self):
        out = {
            "system": self.system.to_json(),
            "point": self.point.to_json(),
            "dynamical_degree": self.degree.to_json(),
            "correction_exponent": self.correction.to_json(),
            "orbit": self.verdict.to_json(),
        }
        if self.trunc_summed is not None:
            out["height_estimates"] = {
                "summed": self.trunc_summed.to_json(),
                "averaged": self.trunc_averaged.to_json(),
            }
        if self.closed_height is not None:
            out["canonical_height"] = self.closed_height.to_json()
        if self.zero_height_dim_bound is not None:
            out["zero_height_subgroup_dim_bound"] = self.zero_height_dim_bound
        if self.finiteness_equivalence is not None:
            out["finiteness_equivalence"] = self.finiteness_equivalence
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def system_report(
    F,
    P: PointGm,
    n_max: int = DEFAULT_N_MAX,
    tol=1e-9,
    word_budget: int = DEFAULT_WORD_BUDGET,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> SystemReport:
    """Aggregate analysis of (system, point); see the field list on SystemReport.

    The finiteness equivalence (zero canonical height iff finite orbit) needs
    the reduced map's characteristic polynomial irreducible and delta > k;
    when only zero height holds, the report falls back to the subgroup bound
    dim >= N - rbar.
    """
    system = _as_system(F)
    if P.n != system.n:
        raise InputError("point dimension does not match the system")
    degree = dynamical_degree(system, n_max=n_max, word_budget=word_budget, bit_budget=bit_budget)
    cert = degree.certificate
    correction = correction_exponent(system, n_max=n_max, degree=degree)
    notes = []
    n_feasible = n_max
    while system.k**n_feasible > 4096 and n_feasible > 1:
        n_feasible -= 1
    delta_arg = degree.exact if degree.exact is not None else degree.hi
    trunc_s = canonical_height_truncated(list(system.matrices), P, n_feasible,
                                         variant="summed", delta=delta_arg,
                                         l_override=correction.l, word_budget=word_budget)
    trunc_a = canonical_height_truncated(list(system.matrices), P, n_feasible,
                                         variant="averaged", delta=delta_arg,
                                         l_override=correction.l, word_budget=word_budget)
    closed = None
    psi = None
    if cert is not None and cert.certified:
        psi = cert.psi_matrix(system)
        try:
            closed = canonical_height_closed(psi, P)
        except Exception as exc:  # closed form is optional in the report
            notes.append(f"closed-form height unavailable: {exc}")
    verdict = classify_orbit(list(system.matrices), P)

    height_zero = trunc_s.is_exact_zero() or float(trunc_s.estimate) < tol
    if closed is not None and closed.exact:
        height_zero = closed.is_zero()
    bound = None
    equivalence = None
    with_delta_gt1 = float(degree.lo) > 1 + 1e-15 or (
        degree.exact is not None and degree.exact.compare(CertifiedReal.from_fraction(Fraction(1))) > 0
    )
    if psi is not None:
        jp = jordan_profile(psi)
        factors = factor_over_q(charpoly(psi))
        irreducible = len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree == system.n
        delta_gt_k = float(degree.lo) > system.k or (
            degree.exact is not None
            and degree.exact.compare(CertifiedReal.from_fraction(Fraction(system.k))) > 0
        )
        if irreducible and delta_gt_k:
            equivalence = "applies"
            if height_zero and verdict.status == "infinite":
                notes.append("inconsistency: equivalence predicts finite orbit but classifier says infinite")
            elif height_zero:
                notes.append("zero canonical height with irreducible reduced map and delta > k: orbit finite")
            elif verdict.status == "finite":
                notes.append("inconsistency: finite orbit should force zero canonical height")
        else:
            equivalence = "inapplicable"
            if not irreducible:
                notes.append("reduced map's characteristic polynomial is reducible; "
                             "zero height does not imply a finite orbit")
            if not delta_gt_k:
                notes.append("delta <= k; the finiteness equivalence does not apply")
        if height_zero and with_delta_gt1:
            bound = system.n - jp.rbar
            notes.append(
                "zero canonical height: the orbit lies in finitely many translates of "
                f"an algebraic subgroup of dimension >= {bound}"
            )
    return SystemReport(
        system=system, point=P, degree=degree, correction=correction,
        trunc_summed=trunc_s, trunc_averaged=trunc_a, closed_height=closed,
        verdict=verdict, zero_height_dim_bound=bound,
        finiteness_equivalence=equivalence, notes=tuple(notes),
    )
