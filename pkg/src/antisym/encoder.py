"""The coding map ``g`` into the eventually-empty points of ``T = prod P_i``.

Coordinate ``i`` of ``g(x)`` holds one entry per distinct length-``i`` prefix
``zeta`` of the support of ``x``::

    (zeta, |ext| mod 2, k_i(coef at min ext), k_i(coef at second ext))

where ``ext`` are the support labels extending ``zeta``. Coordinates past
``n_of(x)`` are empty.
"""

from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from antisym.hamel import HamelVector, n_of, restrict
from antisym.rationals import KSet, below_mask

__all__ = [
    "CoordinateEntry", "CodePoint", "extensions", "eta_selector", "xi_selector",
    "coordinate", "encode", "distance", "first_differing_coordinate",
    "vector_distance", "delta",
]


class CoordinateEntry(NamedTuple):
    zeta: str
    parity: int
    k_eta: KSet
    k_xi: KSet

    @property
    def width(self) -> int:
        return len(self.zeta)

    def to_json(self):
        return {"zeta": self.zeta, "parity": self.parity,
                "k_eta": self.k_eta.bits(), "k_xi": self.k_xi.bits()}

    @classmethod
    def from_json(cls, obj) -> "CoordinateEntry":
        e = cls(obj["zeta"], int(obj["parity"]),
                KSet.from_bits(obj["k_eta"]), KSet.from_bits(obj["k_xi"]))
        e.validate()
        return e

    def validate(self):
        w = len(self.zeta)
        if set(self.zeta) - {"0", "1"} or self.parity not in (0, 1):
            raise ValueError(f"malformed entry {self!r}")
        if self.k_eta.width != w or self.k_xi.width != w:
            raise ValueError(f"entry widths disagree: {self!r}")


Coordinate = FrozenSet[CoordinateEntry]
EMPTY: Coordinate = frozenset()


class CodePoint:
    """A point of ``T_0``: finitely many coordinates, then empty forever."""

    __slots__ = ("coords", "_key")

    def __init__(self, coords: Iterable[Iterable[CoordinateEntry]] = ()):
        self.coords: Tuple[Coordinate, ...] = tuple(frozenset(c) for c in coords)
        for i, coord in enumerate(self.coords):
            for e in coord:
                if e.width != i:
                    raise ValueError(f"entry of width {e.width} at coordinate {i}")
        trimmed = list(self.coords)
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        self._key = tuple(trimmed)

    @classmethod
    def _trusted(cls, coords: Tuple[Coordinate, ...]) -> "CodePoint":
        t = cls.__new__(cls)
        t.coords = coords
        trimmed = list(coords)
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        t._key = tuple(trimmed)
        return t

    def __getitem__(self, i: int) -> Coordinate:
        return self.coords[i] if 0 <= i < len(self.coords) else EMPTY

    @property
    def support_length(self) -> int:
        """Number of coordinates up to and including the last nonempty one."""
        return len(self._key)

    def __eq__(self, other):
        if not isinstance(other, CodePoint):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"CodePoint({[sorted(c) for c in self.coords]!r})"

    def to_json(self) -> List[List[dict]]:
        return [[e.to_json() for e in sorted(c)] for c in self.coords]

    @classmethod
    def from_json(cls, data) -> "CodePoint":
        return cls([CoordinateEntry.from_json(e) for e in coord] for coord in data)


def extensions(x: HamelVector, zeta: str) -> List[str]:
    """Support labels of ``x`` whose zero-extension begins with ``zeta``, in lex order."""
    i = len(zeta)
    return [label for label in x.support if restrict(label, i) == zeta]


def eta_selector(x: HamelVector, zeta: str) -> str:
    ext = extensions(x, zeta)
    if not ext:
        raise ValueError(f"no support label of {x} extends {zeta!r}")
    return ext[0]


def xi_selector(x: HamelVector, zeta: str) -> str:
    ext = extensions(x, zeta)
    if not ext:
        raise ValueError(f"no support label of {x} extends {zeta!r}")
    return ext[1] if len(ext) > 1 else ext[0]


def _groups(x: HamelVector, i: int) -> Dict[str, List[str]]:
    groups: Dict[str, List[str]] = {}
    for label in x.support:  # already lex-sorted
        groups.setdefault(restrict(label, i), []).append(label)
    return groups


def _coordinate(x: HamelVector, i: int, masks: Dict[str, int]) -> Coordinate:
    low = (1 << i) - 1
    entries = []
    for zeta, ext in _groups(x, i).items():
        eta, xi = ext[0], ext[1] if len(ext) > 1 else ext[0]
        entries.append(CoordinateEntry(
            zeta, len(ext) % 2, KSet(i, masks[eta] & low), KSet(i, masks[xi] & low)))
    return frozenset(entries)


def coordinate(x: HamelVector, i: int, n: Optional[int] = None) -> Coordinate:
    """``g(x)(i)``; pass ``n = n_of(x)`` when already known."""
    if n is None:
        n = n_of(x)
    if i > n or not x:
        return EMPTY
    masks = {label: below_mask(c, i) for label, c in x.items()}
    return _coordinate(x, i, masks)


def encode(x: HamelVector) -> CodePoint:
    if not x:
        return CodePoint()
    n = n_of(x)
    # k_i is k_{n+1} cut to its low i bits, so one comparison pass per label
    masks = {label: below_mask(c, n + 1) for label, c in x.items()}
    return CodePoint._trusted(tuple(_coordinate(x, i, masks) for i in range(n + 1)))


def first_differing_coordinate(s: CodePoint, t: CodePoint) -> Optional[int]:
    for i in range(max(len(s.coords), len(t.coords))):
        if s[i] != t[i]:
            return i
    return None


def distance(s: CodePoint, t: CodePoint) -> Fraction:
    i = first_differing_coordinate(s, t)
    return Fraction(0) if i is None else Fraction(1, 2 ** i)


def vector_distance(u: HamelVector, v: HamelVector, upto: Optional[int] = None) -> Fraction:
    """``distance(encode(u), encode(v))`` computed lazily, coordinate by coordinate.

    With ``upto`` given, stop after coordinate ``upto`` and return 0 if the
    codes agree that far (enough to decide ``distance < 2**-upto``).
    """
    nu, nv = n_of(u), n_of(v)
    last = max(nu, nv) if u or v else -1
    if upto is not None:
        last = min(last, upto)
    for i in range(last + 1):
        if coordinate(u, i, nu) != coordinate(v, i, nv):
            return Fraction(1, 2 ** i)
    return Fraction(0)


def delta(x: HamelVector) -> Fraction:
    return Fraction(1, 2 ** n_of(x))
