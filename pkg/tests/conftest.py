"""Independent oracles shared by the test modules.

Nothing here calls into the code paths it is used to check: the rational
enumeration is rebuilt by a breadth-first tree walk, label order by explicit
zero padding, and the coding map straight from its defining formula.
"""

from collections import deque
from fractions import Fraction
from functools import cmp_to_key

import pytest
from hypothesis import strategies as st

from antisym.hamel import HamelVector


def bfs_rationals(count):
    """First ``count`` values of the enumeration via a breadth-first Calkin-Wilf walk."""
    out = [Fraction(0)]
    queue = deque([(1, 1)])
    while len(out) < count:
        a, b = queue.popleft()
        out.append(Fraction(a, b))
        out.append(Fraction(-a, b))
        queue.append((a, a + b))
        queue.append((a + b, b))
    return out[:count]


_TABLE = bfs_rationals(1 << 18)
_INDEX = {q: j for j, q in enumerate(_TABLE)}


def oracle_index(q):
    """Position in the breadth-first table; KeyError past its end."""
    return _INDEX[Fraction(q)]


def padded_cmp(a, b):
    n = max(len(a), len(b))
    pa, pb = a.ljust(n, "0"), b.ljust(n, "0")
    return (pa > pb) - (pa < pb)


def oracle_n(x: HamelVector):
    labels = list(x.terms)
    n = 1
    while True:
        prefixes = [lb.ljust(n, "0")[:n] for lb in labels]
        if len(set(prefixes)) == len(prefixes) and all(
                oracle_index(c) < n for c in x.terms.values()):
            return n
        n += 1


def oracle_k(i, q):
    return frozenset(j for j in range(i) if _TABLE[j] < q)


def oracle_encode(x: HamelVector):
    """Coordinates of the code of ``x`` as sets of plain tuples."""
    terms = x.terms
    if not terms:
        return []
    n = oracle_n(x)
    coords = []
    for i in range(n + 1):
        prefixes = {lb.ljust(i, "0")[:i] for lb in terms}
        coord = set()
        for zeta in prefixes:
            ext = sorted((lb for lb in terms if lb.ljust(i, "0")[:i] == zeta),
                         key=cmp_to_key(padded_cmp))
            eta = ext[0]
            xi = ext[1] if len(ext) != 1 else ext[0]
            coord.add((zeta, len(ext) % 2, oracle_k(i, terms[eta]), oracle_k(i, terms[xi])))
        coords.append(coord)
    return coords


def as_tuples(codepoint):
    return [{(e.zeta, e.parity, e.k_eta.members, e.k_xi.members) for e in c}
            for c in codepoint.coords]


# -- hypothesis strategies ------------------------------------------------------

canonical_labels = st.one_of(
    st.just(""),
    st.text(alphabet="01", max_size=6).map(lambda s: s + "1"))

small_rationals = st.integers(0, 40).map(lambda j: _TABLE[j])


@st.composite
def hamel_vectors(draw, labels=canonical_labels, coefs=small_rationals, max_terms=3):
    items = draw(st.lists(st.tuples(labels, coefs), max_size=max_terms,
                          unique_by=lambda t: t[0]))
    return HamelVector(items)


@pytest.fixture
def rational_table():
    return _TABLE


def random_entry(rng, i, zeta=None):
    from antisym.encoder import CoordinateEntry
    from antisym.rationals import KSet
    if zeta is None:
        zeta = "".join(rng.choice("01") for _ in range(i))
    return CoordinateEntry(zeta, rng.randrange(2), KSet(i, rng.getrandbits(i) if i else 0),
                           KSet(i, rng.getrandbits(i) if i else 0))


def random_coordinate(rng, i, max_entries=3):
    zetas = {"".join(rng.choice("01") for _ in range(i)) for _ in range(rng.randrange(max_entries + 1))}
    return frozenset(random_entry(rng, i, z) for z in zetas)


def random_codepoint(rng, max_coord=3):
    from antisym.encoder import CodePoint
    top = rng.randrange(-1, max_coord + 1)
    return CodePoint(random_coordinate(rng, i) for i in range(top + 1))


def random_close_pair(rng, max_coord=3):
    """Two code points sharing a random number of leading coordinates."""
    from antisym.encoder import CodePoint
    s = random_codepoint(rng, max_coord)
    keep = rng.randrange(0, max_coord + 2)
    coords = [s[i] for i in range(keep)]
    coords += [random_coordinate(rng, i) for i in range(keep, max_coord + 1)]
    return s, CodePoint(coords)
