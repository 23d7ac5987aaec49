"""Symbolic reals: finite rational combinations of basis vectors ``y(eta)``.

A basis label is a finite bit string standing for the infinite sequence it
begins, padded with zeros. Labels must be canonical (empty, or ending in
``1``) so that distinct strings name distinct sequences.
"""

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from antisym.rationals import format_rational, index_of

__all__ = [
    "LabelError", "check_label", "lex_compare", "restrict", "first_difference",
    "HamelVector", "y", "n_of", "separation_length",
]


class LabelError(ValueError):
    """A basis label that is not a canonical bit string."""

    def __init__(self, label, reason):
        super().__init__(f"invalid label {label!r}: {reason}")
        self.label = label


def check_label(bits: str) -> str:
    if not isinstance(bits, str) or set(bits) - {"0", "1"}:
        raise LabelError(bits, "labels are strings over {0,1}")
    if bits.endswith("0"):
        raise LabelError(bits, "non-canonical label (trailing '0')")
    return bits


def lex_compare(a: str, b: str) -> int:
    """Compare the zero-extended sequences named by canonical labels.

    Returns -1, 0 or 1. For canonical labels plain string order already agrees
    with the order on zero-padded sequences: a proper prefix is followed by a
    ``1`` somewhere in the longer label.
    """
    return (a > b) - (a < b)


def restrict(label: str, i: int) -> str:
    """The first ``i`` bits of the zero-extended sequence."""
    if i <= len(label):
        return label[:i]
    return label + "0" * (i - len(label))


def first_difference(a: str, b: str) -> int:
    """Least position where the zero-extended sequences differ (``a != b``)."""
    n = max(len(a), len(b))
    pa, pb = a.ljust(n, "0"), b.ljust(n, "0")
    for pos in range(n):
        if pa[pos] != pb[pos]:
            return pos
    raise ValueError(f"labels {a!r} and {b!r} name the same sequence")


class HamelVector:
    """Immutable sparse map label -> nonzero Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: "Mapping[str, object] | Iterable[Tuple[str, object]]" = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[str, Fraction] = {}
        for label, coef in items:
            check_label(label)
            acc[label] = acc.get(label, 0) + Fraction(coef)
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k] != 0}
        self._hash = None

    @classmethod
    def _trusted(cls, terms):
        v = cls.__new__(cls)
        v._terms = terms
        v._hash = None
        return v

    @property
    def terms(self) -> Mapping[str, Fraction]:
        return dict(self._terms)

    @property
    def support(self) -> Tuple[str, ...]:
        """Support labels in lexicographic order."""
        return tuple(self._terms)

    def coefficient(self, label: str) -> Fraction:
        return self._terms.get(label, Fraction(0))

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __add__(self, other):
        if not isinstance(other, HamelVector):
            return NotImplemented
        acc = dict(self._terms)
        for label, coef in other._terms.items():
            c = acc.get(label, 0) + coef
            if c:
                acc[label] = c
            else:
                acc.pop(label, None)
        return HamelVector._trusted({k: acc[k] for k in sorted(acc)})

    def __neg__(self):
        return HamelVector._trusted({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HamelVector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if scalar == 0:
            return ZERO
        return HamelVector._trusted({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HamelVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"HamelVector({self._terms!r})"

    def __str__(self):
        """Expression syntax accepted by :func:`antisym.cli.parse_expression`."""
        if not self._terms:
            return "0"
        return " + ".join(f"{format_rational(c)}*y({k})" for k, c in self._terms.items())


ZERO = HamelVector()


def y(label: str = "", coef=1) -> HamelVector:
    """``coef * y(label)``."""
    return HamelVector({label: coef})


def separation_length(labels) -> int:
    """Least ``n`` at which the length-``n`` prefixes of ``labels`` are pairwise distinct."""
    labels = sorted(labels)
    need = 0
    for a, b in zip(labels, labels[1:]):
        need = max(need, first_difference(a, b) + 1)
    return need


def n_of(x: HamelVector) -> int:
    """The separation index of ``x``.

    Least ``n >= 1`` such that the support labels are distinct already on
    their first ``n`` bits and every coefficient is among ``q_0, ..., q_{n-1}``.
    Both conditions are upward closed in ``n``, so the least ``n`` is the
    maximum of the three lower bounds.
    """
    n = max(1, separation_length(x.support))
    for coef in x._terms.values():
        n = max(n, index_of(coef) + 1)
    return n
