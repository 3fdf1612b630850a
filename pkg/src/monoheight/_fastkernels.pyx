# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for exact integer matrix products.

Two paths: a C int64 fast path when a bit-length precheck proves products
cannot overflow, and a PyObject path (arbitrary-precision ints driven from C
loops) otherwise.  Results are bit-for-bit identical to the pure-Python
kernels in monoheight._purekernels.
"""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


cdef int _fits_i64(list a, int n, long long* out) except -1:
    # Returns 1 and fills out (row-major) when every entry fits an int64 and
    # n * max|a| * max|b| bounds are checked by the caller via bit lengths.
    cdef int i, j
    cdef object v
    for i in range(n):
        row = <list> a[i]
        for j in range(n):
            v = row[j]
            if not (-9223372036854775807 <= v <= 9223372036854775807):
                return 0
            out[i * n + j] = v
    return 1


cdef int _max_bits(list a, int n):
    cdef int i, j, best = 0, cur
    for i in range(n):
        row = <list> a[i]
        for j in range(n):
            cur = (<object> abs(row[j])).bit_length()
            if cur > best:
                best = cur
    return best


def max_bits(a):
    """Largest bit length over the entries."""
    return _max_bits(a, len(a))


def mat_mul(a, b):
    """Exact product of two square integer matrices given as lists of rows."""
    cdef int n = len(a)
    cdef int i, j, k
    cdef int bits_a = _max_bits(a, n)
    cdef int bits_b = _max_bits(b, n)
    cdef long long *ca
    cdef long long *cb
    cdef long long acc
    # product entry needs bits_a + bits_b + log2(n) + 1 bits; keep margin at 62
    if bits_a + bits_b + (n.bit_length()) < 62:
        ca = <long long*> malloc(n * n * sizeof(long long))
        cb = <long long*> malloc(n * n * sizeof(long long))
        if ca == NULL or cb == NULL:
            if ca != NULL:
                free(ca)
            if cb != NULL:
                free(cb)
            raise MemoryError()
        try:
            _fits_i64(a, n, ca)
            _fits_i64(b, n, cb)
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = 0
                    for k in range(n):
                        acc += ca[i * n + k] * cb[k * n + j]
                    row.append(acc)
                out.append(row)
            return out
        finally:
            free(ca)
            free(cb)
    # arbitrary-precision path, loops in C, arithmetic on PyObjects
    out = []
    for i in range(n):
        arow = <list> a[i]
        row = []
        for j in range(n):
            total = 0
            for k in range(n):
                total += arow[k] * (<list> b[k])[j]
            row.append(total)
        out.append(row)
    return out


def mat_vec(a, v):
    """Exact matrix-vector product."""
    cdef int n = len(v)
    cdef int i, k
    out = []
    for i in range(len(a)):
        arow = <list> a[i]
        total = 0
        for k in range(n):
            total += arow[k] * v[k]
        out.append(total)
    return out


def mat_pow(a, e):
    """Exact e-th power, e >= 0, by binary powering."""
    cdef int n = len(a)
    cdef int i
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [list(row) for row in a]
    while e:
        if e & 1:
            out = mat_mul(out, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return out
