"""Cantor-style embedding of ``T`` into ``[0, 1)`` and the composite ``f``.

Coordinate ``i`` owns a block of ``2**(3i+1)`` consecutive bit positions,
one per possible entry. A point is sent to ``sum 2 * 3**-(pos+1)`` over the
positions of its entries, i.e. a ternary expansion with digits 0 and 2.
Two points whose first differing bit is at position ``m`` land at least
``3**-(m+1)`` apart, and points agreeing on the first ``k`` coordinates land
less than ``3**-B(k)`` apart.
"""

from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from antisym import kernels
from antisym.encoder import CodePoint, CoordinateEntry, encode
from antisym.hamel import HamelVector, n_of
from antisym.rationals import below_mask

__all__ = [
    "DEFAULT_N_MAX", "CapacityError", "block_length", "block_offset", "entry_rank",
    "bit_positions", "embed_parts", "embed", "prefix_numerator", "separated",
    "code_ranks", "ranks_numerator", "first_difference_bit", "epsilon", "f", "f_parts", "gap_parts", "gap_at_least", "gap", "format_ternary",
]

DEFAULT_N_MAX = 5


class CapacityError(ValueError):
    """A coordinate index beyond the configured ``n_max``."""


def block_length(i: int) -> int:
    return 1 << (3 * i + 1)


def block_offset(k: int) -> int:
    """Total bits used by coordinates ``0 .. k-1``: ``2 * (8**k - 1) / 7``."""
    return 2 * ((1 << (3 * k)) - 1) // 7


@lru_cache(maxsize=64)
def _pow3(e: int) -> int:
    return 3 ** e


def entry_rank(e: CoordinateEntry) -> int:
    return kernels.entry_rank(int(e.zeta, 2) if e.zeta else 0, e.parity,
                              e.k_eta.mask, e.k_xi.mask, e.width)


def bit_positions(t: CodePoint, upto: Optional[int] = None) -> List[int]:
    """Sorted global bit positions of the entries of ``t`` (coordinates < ``upto``)."""
    stop = len(t.coords) if upto is None else min(upto, len(t.coords))
    out = []
    for i in range(stop):
        base = block_offset(i)
        out.extend(sorted(base + entry_rank(e) for e in t.coords[i]))
    return out


def _check_capacity(t: CodePoint, n_max: int):
    if t.support_length - 1 > n_max:
        raise CapacityError(
            f"coordinate {t.support_length - 1} exceeds n_max={n_max}")


def embed_parts(t: CodePoint, n_max: int = DEFAULT_N_MAX) -> Tuple[int, int]:
    """``(p, e)`` with ``embed(t) == p / 3**e``; ``p`` is not divisible by 3 unless 0."""
    _check_capacity(t, n_max)
    pos = bit_positions(t)
    if not pos:
        return 0, 0
    e = pos[-1] + 1
    return kernels.ternary_numerator(pos, e), e


def embed(t: CodePoint, n_max: int = DEFAULT_N_MAX) -> Fraction:
    p, e = embed_parts(t, n_max)
    return Fraction(p, _pow3(e))


def prefix_numerator(t: CodePoint, k: int) -> int:
    """Numerator over ``3**block_offset(k)`` of the embedding of coordinates < ``k``."""
    return kernels.ternary_numerator(bit_positions(t, k), block_offset(k))


def separated(s: CodePoint, t: CodePoint, k: int) -> bool:
    """Exactly decide ``|embed(s) - embed(t)| >= 3**-block_offset(k)``.

    Differing prefixes differ by at least ``2 * 3**-B(k)`` while the tails move
    each value by less than ``3**-B(k)``; equal prefixes leave only the tails.
    Coordinates at or past ``k`` are never read, so no capacity limit applies.
    """
    return prefix_numerator(s, k) != prefix_numerator(t, k)


def code_ranks(x: HamelVector, k: int, n: Optional[int] = None) -> List[List[int]]:
    """Sorted entry ranks of ``encode(x)`` on coordinates ``0 .. k-1``.

    Ranks are injective per coordinate, so two codes agree on a coordinate
    exactly when their rank lists there are equal.
    """
    if n is None:
        n = n_of(x)
    stop = min(k, n + 1) if x else 0
    labels = list(x.support)
    masks = [below_mask(c, stop) for c in x.terms.values()] if stop else []
    out = kernels.prefix_ranks(labels, masks, stop)
    out.extend([] for _ in range(k - stop))
    return out


def ranks_numerator(ranks: List[List[int]]) -> int:
    """Numerator over ``3**block_offset(len(ranks))`` of the embedding of those coordinates."""
    pos = [block_offset(i) + r for i, rs in enumerate(ranks) for r in rs]
    return kernels.ternary_numerator(pos, block_offset(len(ranks)))


def first_difference_bit(s: CodePoint, t: CodePoint) -> Optional[int]:
    """Global position of the first bit where the layouts of ``s`` and ``t`` differ."""
    for i in range(max(len(s.coords), len(t.coords))):
        a, b = s[i], t[i]
        if a != b:
            ranks = {entry_rank(e) for e in a ^ b}
            return block_offset(i) + min(ranks)
    return None


def epsilon(x: HamelVector, n_max: int = DEFAULT_N_MAX) -> Fraction:
    """``3**-B(n_of(x) + 1)``: closeness in value below this forces code distance below ``delta(x)``."""
    n = n_of(x)
    if n + 1 > n_max:
        raise CapacityError(f"n_x + 1 = {n + 1} exceeds n_max={n_max}")
    return Fraction(1, _pow3(block_offset(n + 1)))


def f_parts(x: HamelVector, n_max: int = DEFAULT_N_MAX) -> Tuple[int, int]:
    # the code of x has its last nonempty coordinate at n_x
    if x and n_of(x) > n_max:
        raise CapacityError(f"n_x = {n_of(x)} exceeds n_max={n_max}")
    return embed_parts(encode(x), n_max)


def f(x: HamelVector, n_max: int = DEFAULT_N_MAX) -> Fraction:
    p, e = f_parts(x, n_max)
    return Fraction(p, _pow3(e))


def gap_parts(x: HamelVector, s: HamelVector, n_max: int = DEFAULT_N_MAX) -> Tuple[int, int]:
    """``(p, e)`` with ``|f(x+s) - f(x-s)| == p / 3**e``, not reduced."""
    p1, e1 = f_parts(x + s, n_max)
    p2, e2 = f_parts(x - s, n_max)
    e = max(e1, e2)
    return abs(p1 * _pow3(e - e1) - p2 * _pow3(e - e2)), e


def gap_at_least(x: HamelVector, s: HamelVector, k: int, n_max: int = DEFAULT_N_MAX) -> bool:
    """``|f(x+s) - f(x-s)| >= 3**-k`` from the full embeddings, without reducing fractions."""
    p, e = gap_parts(x, s, n_max)
    return p * _pow3(max(k - e, 0)) >= _pow3(max(e - k, 0))


def gap(x: HamelVector, s: HamelVector, n_max: int = DEFAULT_N_MAX) -> Fraction:
    """``|f(x+s) - f(x-s)|`` exactly."""
    p, e = gap_parts(x, s, n_max)
    return Fraction(p, _pow3(e))


def format_ternary(q: Fraction) -> str:
    """``p/3^e`` for a value whose denominator is a power of 3 (``0`` for zero)."""
    q = Fraction(q)
    if q.numerator == 0:
        return "0"
    d = q.denominator
    guess = int(d.bit_length() / 1.584962500721156)
    for e in (guess - 1, guess, guess + 1):
        if e >= 0 and _pow3(e) == d:
            return f"{q.numerator}/3^{e}" if e else str(q.numerator)
    return str(q)
