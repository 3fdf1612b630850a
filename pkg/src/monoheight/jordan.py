"""Jordan-structure invariants of an integer matrix: dominant block data,
the scaled power limit B = lim A^n/(n^l rho^n), and exact Jordan bases.

Block multisets come from exact kernel dimensions: for an irreducible factor g
of the characteristic polynomial, dim ker g(A)^j = deg(g) * sum_i min(s_i, j)
over the per-root block sizes s_i, so the s_i are recovered from rank
differences alone, with no splitting field.

The limit is taken along n = 0 (mod m), with m = 2 exactly when a negative
real eigenvalue attains the spectral radius; on that subsequence the dominant
(lambda/rho)^n phases are constant and the limit exists whenever the dominant
eigenvalues are real.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp, mpf

from . import kernels
from .errors import BudgetError, UnsupportedError
from .matrices import (
    CertifiedReal,
    IntMatrix,
    ModulusProfile,
    frac_rank,
    modulus_profile,
    quad_det,
    quad_rank,
)
from .polys import IntPoly
from .precision import default_precision
from .quadratic import Quad
from .scalars import AlgebraicScalar, scalar_heights


@dataclass(frozen=True)
class ProfileFactor:
    """Block data for one irreducible factor of the characteristic polynomial."""

    poly: IntPoly
    multiplicity: int
    block_sizes: tuple  # sizes of the Jordan blocks of any single root, descending
    has_max_modulus_root: bool
    roots_at_max: int


@dataclass(frozen=True)
class JordanProfile:
    """rho(A), correction exponent l, maximal-subspace counts r and rbar, parity m."""

    rho: CertifiedReal
    factors: tuple
    l: int
    r: int
    rbar: int
    m: int
    modulus: ModulusProfile  # detailed per-root modulus data, for internal reuse

    def max_block_counts(self):
        """Per max-modulus factor: number of blocks of size l+1 per root."""
        out = []
        for pf in self.factors:
            if pf.has_max_modulus_root:
                out.append(sum(1 for s in pf.block_sizes if s == self.l + 1))
        return out


def _poly_at_matrix(p: IntPoly, A: IntMatrix):
    """p(A) as integer rows, by Horner."""
    n = A.n
    acc = [[0] * n for _ in range(n)]
    for c in reversed(p.coeffs):
        acc = kernels.mat_mul(acc, A.row_lists())
        for i in range(n):
            acc[i][i] += c
    return acc


def _block_sizes(A: IntMatrix, g: IntPoly, mult: int):
    """Jordan block sizes (per root of g), from kernel dimensions of g(A)^j."""
    n = A.n
    deg = g.degree
    base = _poly_at_matrix(g, A)
    dims = [0]
    power = None
    for j in range(1, mult + 1):
        power = base if power is None else kernels.mat_mul(power, base)
        dims.append(n - frac_rank(power))
    counts = []  # counts[j-1] = number of blocks of size >= j, per root
    for j in range(1, mult + 1):
        diff = dims[j] - dims[j - 1]
        if diff % deg:
            raise ArithmeticError("kernel growth not divisible by factor degree")
        counts.append(diff // deg)
    counts.append(0)
    sizes = []
    for j in range(mult, 0, -1):
        sizes.extend([j] * (counts[j - 1] - counts[j]))
    if sum(sizes) != mult:
        raise ArithmeticError("block sizes do not account for the multiplicity")
    return tuple(sorted(sizes, reverse=True))


def jordan_profile(A: IntMatrix) -> JordanProfile:
    """Exact Jordan invariants; see ProfileFactor for per-factor content.

    Examples
    ========
    diag(2,3) has l=0, r=1, rbar=1; the Fibonacci companion matrix has r=1 but
    rbar=2 because the Galois conjugate eigenspace is counted in rbar.
    """
    prof = modulus_profile(A)
    factors = []
    for fd in prof.factors:
        sizes = _block_sizes(A, fd.poly, fd.multiplicity)
        factors.append(
            ProfileFactor(
                poly=fd.poly,
                multiplicity=fd.multiplicity,
                block_sizes=sizes,
                has_max_modulus_root=fd.is_max,
                roots_at_max=fd.roots_at_max if fd.is_max else 0,
            )
        )
    n_check = sum(pf.poly.degree * sum(pf.block_sizes) for pf in factors)
    if n_check != A.n:
        raise ArithmeticError("block dimensions do not sum to N")
    l = max(max(pf.block_sizes) for pf in factors if pf.has_max_modulus_root) - 1
    r = 0
    rbar = 0
    for pf in factors:
        if not pf.has_max_modulus_root:
            continue
        top_blocks = sum(1 for s in pf.block_sizes if s == l + 1)
        if top_blocks:
            r += top_blocks * pf.roots_at_max
            rbar += top_blocks * pf.poly.degree
    return JordanProfile(
        rho=prof.rho,
        factors=tuple(factors),
        l=l,
        r=r,
        rbar=rbar,
        m=prof.parity,
        modulus=prof,
    )


@dataclass
class LimitMatrixB:
    """B = lim_{n = n0 mod m} A^n / (n^l rho^n) with certification data."""

    n: int
    exact: bool
    entries: list  # Quad rows when exact, mpf rows otherwise
    width: object  # mpf bound on entrywise error (0 when exact)
    m: int
    n0: int
    l: int
    rho: CertifiedReal
    xi_signs: tuple
    all_eigenvalues_real: bool
    notes: tuple = ()

    def entry_mpf(self, i, j, prec=None):
        prec = prec or default_precision()
        v = self.entries[i][j]
        return v.to_mpf(prec) if isinstance(v, Quad) else v


def _qmat(rows_int):
    return [[Quad(v) for v in row] for row in rows_int]


def _qmat_mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Quad(0)) for j in range(n)] for i in range(n)]


def _qmat_scale(a, c: Quad):
    return [[v * c for v in row] for row in a]


def _qmat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _qmat_sub_scalar(a, lam: Quad):
    out = [row[:] for row in a]
    for i in range(len(out)):
        out[i][i] = out[i][i] - lam
    return out


def _qmat_pow(a, e: int):
    n = len(a)
    out = [[Quad(1 if i == j else 0) for j in range(n)] for i in range(n)]
    base = a
    while e:
        if e & 1:
            out = _qmat_mul(out, base)
        base = _qmat_mul(base, base)
        e >>= 1
    return out


def _taylor_at(p_coeffs, lam: Quad, terms: int):
    """First `terms` Taylor coefficients of the polynomial at lam (synthetic division)."""
    work = list(p_coeffs)
    out = []
    for _ in range(terms):
        rem = Quad(0)
        for c in reversed(work):
            rem = rem * lam + c
        out.append(rem)
        # divide by (x - lam): synthetic division, quotient replaces work
        quot = []
        acc = Quad(0)
        for c in reversed(work):
            acc = acc * lam + c
            quot.append(acc)
        quot = quot[:-1]
        work = list(reversed([q for q in quot]))
        if not work:
            work = [Quad(0)]
    return out


def _spectral_projector(A: IntMatrix, cp: IntPoly, lam: Quad, mult: int):
    """P with P^2 = P, image the generalized eigenspace of lam; exact over Q(sqrt d).

    charpoly = (x-lam)^mult * h; P = s(A) h(A) where s is the series inverse of
    h modulo (x-lam)^mult.
    """
    coeffs = [Quad(c) for c in cp.coeffs]
    # h = charpoly / (x-lam)^mult by synthetic division
    work = coeffs
    for _ in range(mult):
        quot = []
        acc = Quad(0)
        for c in reversed(work):
            acc = acc * lam + c
            quot.append(acc)
        rem = quot[-1]
        if rem != Quad(0):
            raise ArithmeticError("eigenvalue multiplicity mismatch in projector")
        work = list(reversed(quot[:-1]))
    h = work
    t = _taylor_at(h, lam, mult)  # h around lam
    if t[0] == Quad(0):
        raise ArithmeticError("h(lam) = 0; factor multiplicities inconsistent")
    inv0 = t[0].inverse()
    s = [inv0]
    for j in range(1, mult):
        acc = Quad(0)
        for i in range(1, j + 1):
            acc = acc + t[i] * s[j - i]
        s.append(Quad(0) - acc * inv0)
    qa = _qmat(A.row_lists())
    n = A.n
    # h(A) by Horner
    hA = [[Quad(0)] * n for _ in range(n)]
    for c in reversed(h):
        hA = _qmat_mul(hA, qa)
        for i in range(n):
            hA[i][i] = hA[i][i] + c
    shifted = _qmat_sub_scalar(qa, lam)
    acc = [[Quad(0)] * n for _ in range(n)]
    power = [[Quad(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for j in range(mult):
        acc = _qmat_add(acc, _qmat_scale(power, s[j]))
        if j + 1 < mult:
            power = _qmat_mul(power, shifted)
    proj = _qmat_mul(acc, hA)
    if _qmat_mul(proj, proj) != proj:
        raise ArithmeticError("spectral projector is not idempotent")
    return proj


def limit_matrix_B(A: IntMatrix, tol=1e-12, prec=None) -> LimitMatrixB:
    """Limit of A^n/(n^l rho^n) along the parity subsequence n = 0 (mod m).

    Exact spectral-projector entries whenever the dominant eigenvalues are
    rational or quadratic; otherwise a certified iteration with the stated
    stopping rule.  Dominant complex eigenvalues are rejected.
    """
    prec = prec or default_precision()
    jp = jordan_profile(A)
    prof = jp.modulus
    l, m = jp.l, jp.m
    dominant = []
    for idx in prof.max_indices:
        fd = prof.factors[idx]
        pf = jp.factors[[f.poly for f in jp.factors].index(fd.poly)]
        if (l + 1) not in pf.block_sizes:
            continue  # max-modulus but smaller blocks: vanishes in the limit
        real_at_max = len(fd.max_real_signs)
        if real_at_max != fd.roots_at_max:
            raise UnsupportedError("dominant eigenvalue is not real; limit has no fixed phase")
        dominant.append((fd, pf))
    all_real = all(fd.all_roots_real for fd in prof.factors)
    notes = [] if all_real else [
        "matrix has nonreal eigenvalues below the spectral radius; the limit only needs the dominant ones real",
    ]
    xi = []
    for fd, pf in dominant:
        top_blocks = sum(1 for s in pf.block_sizes if s == l + 1)
        for sgn in fd.max_real_signs:
            xi.extend([sgn**l] * top_blocks)

    exact_ok = all(fd.poly.degree <= 2 for fd, _ in dominant)
    if exact_ok:
        entries = _exact_limit(A, prof, jp, dominant)
        b = LimitMatrixB(
            n=A.n, exact=True, entries=entries, width=mp.mpf(0), m=m, n0=0, l=l,
            rho=jp.rho, xi_signs=tuple(xi), all_eigenvalues_real=all_real, notes=tuple(notes),
        )
        _check_exact_limit(A, b)
        return b
    entries, width = _iterated_limit(A, jp, Fraction(str(tol)), prec)
    return LimitMatrixB(
        n=A.n, exact=False, entries=entries, width=width, m=m, n0=0, l=l,
        rho=jp.rho, xi_signs=tuple(xi), all_eigenvalues_real=all_real,
        notes=tuple(notes + ["entries are certified enclosure midpoints, not exact"]),
    )


def _exact_limit(A: IntMatrix, prof, jp, dominant):
    l = jp.l
    n = A.n
    rho = None
    total = [[Quad(0)] * n for _ in range(n)]
    qa = _qmat(A.row_lists())
    for fd, pf in dominant:
        for lam in fd.real_roots_at_max:
            if rho is None:
                rho = abs(lam)
            proj = _spectral_projector(A, prof.charpoly, lam, fd.multiplicity)
            nil = _qmat_sub_scalar(qa, lam)
            term = _qmat_mul(_qmat_pow(nil, l), proj) if l else proj
            sgn = lam.sign()
            factor = Quad(1) if (sgn > 0 or l % 2 == 0) else Quad(-1)
            total = _qmat_add(total, _qmat_scale(term, factor))
    scale = (Quad(1) / (abs(rho) ** l)) * Quad(Fraction(1, factorial(l)))
    return _qmat_scale(total, scale)


def _check_exact_limit(A: IntMatrix, b: LimitMatrixB):
    if all(v == Quad(0) for row in b.entries for v in row):
        raise ArithmeticError("limit matrix vanished identically")
    qa = _qmat(A.row_lists())
    am = _qmat_pow(qa, b.m)
    lhs = _qmat_mul(b.entries, am)
    rho_m = b.rho.descriptor ** b.m
    rhs = _qmat_scale(b.entries, rho_m)
    if lhs != rhs:
        raise ArithmeticError("B A^m = rho^m B identity failed in exact arithmetic")


def _iterated_limit(A: IntMatrix, jp, tol: Fraction, prec: int):
    """Certified iteration for dominant eigenvalues of degree > 2 (real)."""
    l, m = jp.l, jp.m
    n = A.n
    rho_mpf = jp.rho.to_mpf(prec + 32)
    second = jp.modulus.second_sq_hi
    ratio = None
    if second is not None:
        jp.rho.refine(Fraction(1, 2**96))
        ratio = mp.sqrt(mpf(second.numerator) / mpf(second.denominator)) / rho_mpf
    poly_decay = any(
        pf.has_max_modulus_root and any(s < l + 1 for s in pf.block_sizes)
        for pf in jp.factors
    )
    tol_mpf = mpf(tol.numerator) / mpf(tol.denominator)
    with mp.workprec(prec + 64):
        step = A.pow(m)
        power = step
        nval = m
        prev = None
        for _ in range(4000):
            scalemat = [[mpf(v) for v in row] for row in power.row_lists()]
            denom = mpf(nval) ** l * rho_mpf**nval
            cur = [[v / denom for v in row] for row in scalemat]
            if prev is not None:
                diff = max(abs(cur[i][j] - prev[i][j]) for i in range(n) for j in range(n))
                geo = (ratio**nval * mpf(nval) ** (2 * n)) if ratio is not None else mpf(0)
                poly_ok = (not poly_decay) or diff * nval < tol_mpf
                if diff < tol_mpf and geo < tol_mpf and poly_ok:
                    width = diff + geo
                    return cur, width
            prev = cur
            power = power.mul(step)
            nval += m
            if power.max_bit_length() > 2**22:
                break
        raise BudgetError("power iteration for the limit matrix did not converge", partial=prev)


# ---------------------------------------------------------------------------
# exact Jordan basis


@dataclass
class JordanBasisData:
    """Columns of J in (factor, root, block, position) order, with height data."""

    J: list  # Quad rows
    T: list  # Jordan form, Quad rows
    det_J: Quad
    field_d: int  # 0 for rational, else the squarefree radicand
    entry_scalars: list  # AlgebraicScalar per nonzero entry
    det_inv_scalar: AlgebraicScalar
    max_entry_mult_log: tuple  # enclosure of max log H_mult over entries

    def max_entry_scalar(self) -> AlgebraicScalar:
        best = self.entry_scalars[0]
        for s in self.entry_scalars[1:]:
            if _mult_log_key(s) > _mult_log_key(best):
                best = s
        return best


def _mult_log_key(s: AlgebraicScalar):
    lo, hi = s.h_mult_log_enclosure(96)
    return (lo + hi) / 2


def _quad_roots_of_factor(g: IntPoly):
    """Roots of an irreducible degree <= 2 integer polynomial, as Quad values."""
    if g.degree == 1:
        return [Quad(Fraction(-g.coeffs[0], g.coeffs[1]))]
    c0, c1, c2 = (Fraction(c) for c in g.coeffs)
    disc = c1 * c1 - 4 * c0 * c2
    if disc <= 0:
        raise UnsupportedError("complex eigenvalues: no real quadratic Jordan basis")
    root = Quad.sqrt_of(disc)
    r1 = (Quad(-c1) + root) / Quad(2 * c2)
    r2 = (Quad(-c1) - root) / Quad(2 * c2)
    # deterministic order: the +sqrt branch first
    return [r1, r2]


def _vec_height_key(v):
    """Sorting key preferring small entries, then lexicographic order."""
    mags = []
    for q in v:
        mags.append(max(abs(q.a.numerator), q.a.denominator, abs(q.b.numerator), q.b.denominator))
    return (max(mags), [(str(q)) for q in v])


def _normalize_chain(chain):
    """Scale a whole chain so the eigenvector's first nonzero coordinate is 1.

    The chain is a single orbit under A - lambda I, so one scalar rescales all
    of it; pinning the eigenvector keeps the output deterministic and keeps
    entry heights small (field elements like (-1+sqrt(5))/2 rather than their
    cleared integral multiples).
    """
    lead = next(q for q in chain[0] if q != Quad(0))
    inv = lead.inverse()
    return [[q * inv for q in vec] for vec in chain]


def jordan_basis(A: IntMatrix) -> JordanBasisData:
    """Exact Jordan basis when all eigenvalues lie in Q or one real quadratic field.

    Chains are built by kernel ascent of (A - lambda I)^k with smallest-height
    integral representatives, so the height data entering effective constants
    is reproducible.
    """
    jp = jordan_profile(A)
    # coefficient field
    ds = set()
    for pf in jp.factors:
        if pf.poly.degree > 2:
            raise UnsupportedError("eigenvalue of degree > 2: exact Jordan basis out of scope")
        if pf.poly.degree == 2:
            c0, c1, c2 = pf.poly.coeffs
            disc = c1 * c1 - 4 * c0 * c2
            if disc < 0:
                raise UnsupportedError("complex eigenvalues: no real quadratic Jordan basis")
            from .quadratic import squarefree_part as _sqf

            _, d = _sqf(disc)
            ds.add(d)
    if len(ds) > 1:
        raise UnsupportedError("eigenvalues span more than one quadratic field")
    field_d = ds.pop() if ds else 0

    n = A.n
    qa = _qmat(A.row_lists())
    columns = []
    t_blocks = []  # (lam, size) in column order
    # linear factors ordered by their root, so diag(2,3) yields the identity;
    # higher-degree factors keep the canonical (degree, coefficients) order
    def _factor_key(pf):
        if pf.poly.degree == 1:
            return (1, Fraction(-pf.poly.coeffs[0], pf.poly.coeffs[1]), ())
        return (pf.poly.degree, Fraction(0), pf.poly.coeffs)

    for pf in sorted(jp.factors, key=_factor_key):
        for lam in _quad_roots_of_factor(pf.poly):
            chains = _chains_for_eigenvalue(qa, n, lam, pf.block_sizes)
            for chain in chains:
                chain = _normalize_chain(chain)
                for vec in chain:
                    columns.append(vec)
                t_blocks.append((lam, len(chain)))
    J = [[columns[j][i] for j in range(n)] for i in range(n)]
    T = [[Quad(0)] * n for _ in range(n)]
    pos = 0
    for lam, size in t_blocks:
        for k in range(size):
            T[pos + k][pos + k] = lam
            if k + 1 < size:
                T[pos + k][pos + k + 1] = Quad(1)
        pos += size
    if _qmat_mul(qa, J) != _qmat_mul(J, T):
        raise ArithmeticError("A J = J T verification failed")
    det = quad_det(J)
    if det == Quad(0):
        raise ArithmeticError("Jordan basis is singular")
    scalars = [scalar_heights(v) for row in J for v in row if v != Quad(0)]
    det_inv = scalar_heights(det.inverse())
    los, his = zip(*(s.h_mult_log_enclosure(96) for s in scalars))
    return JordanBasisData(
        J=J,
        T=T,
        det_J=det,
        field_d=field_d,
        entry_scalars=scalars,
        det_inv_scalar=det_inv,
        max_entry_mult_log=(max(los), max(his)),
    )


def _chains_for_eigenvalue(qa, n, lam: Quad, sizes):
    """Jordan chains for one eigenvalue, sizes descending; exact kernel ascent."""
    shifted = _qmat_sub_scalar(qa, lam)
    max_size = sizes[0]
    powers = [None]
    cur = [[Quad(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for _ in range(max_size):
        cur = _qmat_mul(cur, shifted)
        powers.append([row[:] for row in cur])
    kernels_by_level = {j: _quad_nullspace_sorted(powers[j]) for j in range(1, max_size + 1)}

    chains = []
    used = []  # vectors already fixed at each level (pushed-down tops and smaller kernels)
    for s in sorted(set(sizes), reverse=True):
        count = sum(1 for x in sizes if x == s)
        lower = kernels_by_level.get(s - 1, []) if s > 1 else []
        pushed = [_qmat_vec(powers[t - s], top) for t, top in chains_tops(chains) if t > s]
        span = [v[:] for v in lower] + [v[:] for v in pushed]
        tops = []
        for cand in kernels_by_level[s]:
            if len(tops) == count:
                break
            if _independent(span + [cand]):
                span.append(cand)
                tops.append(cand)
        if len(tops) != count:
            raise ArithmeticError("kernel ascent failed to find enough chain tops")
        for top in tops:
            chain = []
            for k in range(s - 1, -1, -1):
                vec = _qmat_vec(powers[k], top) if k else top
                chain.append(vec)
            chains.append((s, top, chain))
    chains.sort(key=lambda c: (-c[0], _vec_height_key(c[1])))
    return [chain for _, _, chain in chains]


def chains_tops(chains):
    return [(s, top) for s, top, _ in chains]


def _qmat_vec(mat, v):
    n = len(v)
    return [sum((mat[i][k] * v[k] for k in range(n)), Quad(0)) for i in range(n)]


def _quad_nullspace_sorted(rows):
    from .matrices import quad_nullspace

    basis = quad_nullspace(rows)
    return sorted(basis, key=_vec_height_key)


def _independent(vectors):
    return quad_rank(vectors) == len(vectors)
