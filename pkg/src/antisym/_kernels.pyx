# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled numeric kernels; mirrors ``_pykernels`` exactly.

Machine-word fast paths are taken only when every intermediate provably fits
in 64 bits; otherwise the call is delegated to the pure-Python version.
"""

from antisym import _pykernels as _py

cdef long long _LIM31 = 1LL << 31


def cw_node(m):
    cdef unsigned long long mm
    cdef long long a = 1, b = 1
    cdef int k
    # depth <= 62 keeps a, b below Fib(64) < 2**63
    if m < (1 << 62):
        mm = m
        k = 63
        while k >= 0 and not (mm >> k) & 1:
            k -= 1
        k -= 1
        while k >= 0:
            if (mm >> k) & 1:
                a = a + b
            else:
                b = a + b
            k -= 1
        return a, b
    return _py.cw_node(m)


def cw_heap_index(a, b):
    cdef long long x, y
    cdef unsigned long long m = 0
    cdef int depth = 0
    if a >= (1 << 62) or b >= (1 << 62):
        return _py.cw_heap_index(a, b)
    x = a
    y = b
    while x != y:
        if depth >= 62:
            return _py.cw_heap_index(a, b)
        if x < y:
            y -= x
        else:
            x -= y
            m |= 1ULL << depth
        depth += 1
    return int((1ULL << depth) | m)


cdef unsigned long long _mask_small(long long num, long long den,
                                    const long long[:] nums,
                                    const long long[:] dens, int width):
    cdef unsigned long long mask = 0
    cdef int j
    for j in range(width):
        if nums[j] * den < num * dens[j]:
            mask |= 1ULL << j
    return mask


def below_mask(num, den, nums, dens, width):
    cdef object mask
    cdef int j, lo
    if -_LIM31 < num < _LIM31 and den < _LIM31:
        # table entries are bounded by the caller (see rationals.table)
        if width <= 64:
            return int(_mask_small(num, den, nums, dens, width))
        mask = 0
        lo = 0
        while lo < width:
            j = min(64, width - lo)
            mask |= int(_mask_small(num, den, nums[lo:lo + j],
                                    dens[lo:lo + j], j)) << lo
            lo += j
        return mask
    return _py.below_mask(num, den, nums, dens, width)


def entry_rank(zeta_val, parity, k_eta, k_xi, width):
    cdef unsigned long long r
    if width <= 20:
        r = (((<unsigned long long>zeta_val << 1 | <unsigned long long>parity)
              << width | <unsigned long long>k_eta) << width) | <unsigned long long>k_xi
        return int(r)
    return _py.entry_rank(zeta_val, parity, k_eta, k_xi, width)


def prefix_ranks(list labels, list masks, Py_ssize_t k):
    cdef Py_ssize_t i, t, u, m = len(labels), xi
    cdef list out = [], ranks
    cdef str zeta
    cdef object low
    for i in range(k):
        low = (1 << i) - 1
        ranks = []
        t = 0
        while t < m:
            zeta = _restrict(<str>labels[t], i)
            u = t + 1
            while u < m and _restrict(<str>labels[u], i) == zeta:
                u += 1
            xi = t + 1 if u - t > 1 else t
            ranks.append(entry_rank(int(zeta, 2) if i else 0, (u - t) & 1,
                                    masks[t] & low, masks[xi] & low, i))
            t = u
        ranks.sort()
        out.append(ranks)
    return out


cdef inline str _restrict(str label, Py_ssize_t i):
    if len(label) >= i:
        return label[:i]
    return label + "0" * (i - len(label))


def ternary_numerator(positions, exponent):
    cdef list pos = sorted(positions)
    if not pos:
        return 0
    return 2 * _horner3(pos, 0, len(pos)) * _pow3(<long long>exponent - 1 - <long long>pos[len(pos) - 1])


cdef object _horner3(list pos, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t mid
    if hi - lo == 1:
        return 1
    mid = (lo + hi) // 2
    return (_horner3(pos, lo, mid) * _pow3(<long long>pos[hi - 1] - <long long>pos[mid - 1])
            + _horner3(pos, mid, hi))


cdef dict _POW3 = {}


cdef object _pow3(long long e):
    cdef object v = _POW3.get(e)
    if v is None:
        v = (<object>3) ** e
        # exponents below B(5) cover every block that campaigns touch
        if e < 12000:
            _POW3[e] = v
    return v
