"""A fixed bijection between the naturals and the rationals, and k-sets.

Index 0 is zero. For ``j >= 1`` put ``m = ceil(j/2)`` and let ``cw(m)`` be the
m-th Calkin-Wilf node in breadth-first order (root ``1/1``, node ``a/b`` has
children ``a/(a+b)`` and ``(a+b)/b``); odd indices carry ``+cw(m)``, even
indices ``-cw(m)``::

    0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, 3/2, ...
"""

import re
from array import array
from fractions import Fraction
from typing import FrozenSet, NamedTuple

from antisym import kernels

__all__ = [
    "KSet", "nth_rational", "index_of", "k_set", "below_mask",
    "format_rational", "parse_rational",
]

# Table entries must stay below 2**31 for the compiled mask kernel; the
# Calkin-Wilf values at index j are at most Fib(log2(j) + 3).
_TABLE_LIMIT = 1 << 40

_nums = array("q", [0])
_dens = array("q", [1])


def nth_rational(j: int) -> Fraction:
    """Return ``q_j``."""
    if j < 0:
        raise ValueError(f"rational index must be non-negative, got {j}")
    if j == 0:
        return Fraction(0)
    a, b = kernels.cw_node((j + 1) // 2)
    return Fraction(a if j % 2 else -a, b)


def index_of(q) -> int:
    """Return the unique ``j`` with ``nth_rational(j) == q``."""
    if not isinstance(q, Fraction):
        q = Fraction(q)
    num = q.numerator
    if num == 0:
        return 0
    m = kernels.cw_heap_index(abs(num), q.denominator)
    return 2 * m - 1 if num > 0 else 2 * m


def _grow_table(width):
    if width > _TABLE_LIMIT:
        raise OverflowError(f"k-set width {width} beyond supported table size")
    for j in range(len(_nums), width):
        q = nth_rational(j)
        _nums.append(q.numerator)
        _dens.append(q.denominator)


def below_mask(q, width: int) -> int:
    """Bitmask of the indices ``j < width`` with ``q_j < q``."""
    if not isinstance(q, Fraction):
        q = Fraction(q)
    if width <= 0:
        return 0
    if width > len(_nums):
        _grow_table(width)
    return kernels.below_mask(q.numerator, q.denominator, _nums, _dens, width)


class KSet(NamedTuple):
    """``{q_j : q_j < q, j < width}`` stored as a width-tagged bitmask."""

    width: int
    mask: int

    @property
    def members(self) -> FrozenSet[int]:
        return frozenset(j for j in range(self.width) if self.mask >> j & 1)

    def __contains__(self, j):
        return 0 <= j < self.width and bool(self.mask >> j & 1)

    def bits(self) -> str:
        """Little-endian bit string: character j is 1 iff ``q_j`` is a member."""
        return "".join("1" if self.mask >> j & 1 else "0" for j in range(self.width))

    @classmethod
    def from_bits(cls, bits: str) -> "KSet":
        if set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(len(bits), sum(1 << j for j, c in enumerate(bits) if c == "1"))

    def restrict(self, width: int) -> "KSet":
        """The same comparison set cut down to indices below ``width``."""
        if width > self.width:
            raise ValueError("cannot widen a k-set")
        return KSet(width, self.mask & ((1 << width) - 1))


def k_set(i: int, q) -> KSet:
    return KSet(i, below_mask(q, i))


_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``-p`` or ``p/q`` (no decimals, no exponents)."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(q) -> str:
    """Canonical ``p/q`` form, or ``p`` for integers."""
    return str(Fraction(q))
