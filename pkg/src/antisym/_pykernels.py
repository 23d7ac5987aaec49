"""Pure-Python implementations of the numeric kernels.

Every function here has a compiled twin in ``_kernels.pyx`` with the same
signature and results; :mod:`antisym.kernels` picks one at import time.
"""

from functools import lru_cache


@lru_cache(maxsize=16384)
def _pow3(e):
    return 3 ** e


def cw_node(m):
    """Return ``(a, b)`` for the ``m``-th Calkin-Wilf node in heap order (m >= 1)."""
    a, b = 1, 1
    for bit in bin(m)[3:]:
        if bit == "0":
            b = a + b
        else:
            a = a + b
    return a, b


def cw_heap_index(a, b):
    """Inverse of :func:`cw_node` for coprime positive ``a``, ``b``.

    Walks to the root in runs (Euclid quotients) so deep nodes such as
    ``1/10**6`` cost O(log) big-int steps rather than O(depth).
    """
    runs = []
    while a != b:
        if a < b:
            t = (b - 1) // a
            b -= t * a
            runs.append((0, t))
        else:
            t = (a - 1) // b
            a -= t * b
            runs.append((1, t))
    m = 1
    for bit, t in reversed(runs):
        m <<= t
        if bit:
            m |= (1 << t) - 1
    return m


def below_mask(num, den, nums, dens, width):
    """Bit ``j`` (j < width) set iff ``nums[j]/dens[j] < num/den``."""
    mask = 0
    for j in range(width):
        if nums[j] * den < num * dens[j]:
            mask |= 1 << j
    return mask


def entry_rank(zeta_val, parity, k_eta, k_xi, width):
    return (((zeta_val << 1 | parity) << width | k_eta) << width) | k_xi


def ternary_numerator(positions, exponent):
    """Integer ``N`` with ``N / 3**exponent == sum(2 * 3**-(p+1))`` over ``positions``."""
    pos = sorted(positions)
    if not pos:
        return 0
    return 2 * _horner3(pos, 0, len(pos)) * _pow3(exponent - 1 - pos[-1])


def _horner3(pos, lo, hi):
    # sum of 3**(pos[hi-1] - p) over pos[lo:hi], split in halves so the big
    # multiplications stay balanced
    if hi - lo == 1:
        return 1
    mid = (lo + hi) // 2
    return _horner3(pos, lo, mid) * _pow3(pos[hi - 1] - pos[mid - 1]) + _horner3(pos, mid, hi)


def prefix_ranks(labels, masks, k):
    """Sorted entry ranks of coordinates ``0 .. k-1`` of a code.

    ``labels`` are the lex-sorted support labels and ``masks[t]`` the k-set
    bitmask (width >= k-1) of the coefficient at ``labels[t]``.
    """
    out = []
    for i in range(k):
        low = (1 << i) - 1
        ranks = []
        t, m = 0, len(labels)
        while t < m:
            zeta = labels[t][:i].ljust(i, "0")
            u = t + 1
            while u < m and labels[u][:i].ljust(i, "0") == zeta:
                u += 1
            xi = t + 1 if u - t > 1 else t
            zval = int(zeta, 2) if i else 0
            ranks.append(entry_rank(zval, (u - t) & 1, masks[t] & low, masks[xi] & low, i))
            t = u
        ranks.sort()
        out.append(ranks)
    return out
