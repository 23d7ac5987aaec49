import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from antisym.embedding import (
    CapacityError, bit_positions, block_length, block_offset, code_ranks, embed,
    embed_parts, entry_rank, epsilon, f, first_difference_bit, format_ternary, gap,
    gap_at_least, ranks_numerator, separated)
from antisym.encoder import CodePoint, CoordinateEntry, encode, distance
from antisym.hamel import HamelVector, n_of, y
from antisym.rationals import KSet

from conftest import hamel_vectors, random_close_pair, random_codepoint


def direct_embed(t):
    total = Fraction(0)
    for i, coord in enumerate(t.coords):
        for e in coord:
            total += 2 * Fraction(1, 3 ** (block_offset(i) + entry_rank(e) + 1))
    return total


def test_layout_constants():
    assert [block_length(i) for i in range(3)] == [2, 16, 128]
    assert [block_offset(k) for k in range(7)] == [0, 2, 18, 146, 1170, 9362, 74898]
    for k in range(10):
        assert block_offset(k) == sum(block_length(j) for j in range(k))


@pytest.mark.parametrize("entry, rank", [
    (CoordinateEntry("", 0, KSet(0, 0), KSet(0, 0)), 0),
    (CoordinateEntry("", 1, KSet(0, 0), KSet(0, 0)), 1),
    (CoordinateEntry("1", 1, KSet(1, 1), KSet(1, 1)), 15),
])
def test_entry_rank_examples(entry, rank):
    assert entry_rank(entry) == rank


@pytest.mark.parametrize("width", [0, 1, 2])
def test_entry_rank_is_bijective(width):
    ranks = []
    for bits in itertools.product("01", repeat=width):
        for parity in (0, 1):
            for a in range(2 ** width):
                for b in range(2 ** width):
                    ranks.append(entry_rank(CoordinateEntry(
                        "".join(bits), parity, KSet(width, a), KSet(width, b))))
    assert sorted(ranks) == list(range(block_length(width)))


def test_embed_examples():
    assert embed(CodePoint()) == 0
    single = CodePoint([[CoordinateEntry("", 1, KSet(0, 0), KSet(0, 0))]])
    assert embed(single) == Fraction(2, 9)
    v = embed(encode(y("")))
    assert (3 ** 146) % v.denominator == 0
    assert v == direct_embed(encode(y("")))


@settings(deadline=None)
@given(hamel_vectors())
def test_embed_matches_direct_sum(x):
    t = encode(x)
    if t.support_length - 1 > 3:
        return
    assert embed(t) == direct_embed(t)


def test_embed_parts_lowest_terms():
    p, e = embed_parts(encode(y("") + y("1")))
    assert p % 3 != 0
    assert Fraction(p, 3 ** e).denominator == 3 ** e


def test_capacity():
    x = y("", 2)  # index of 2 is 5, so n_x = 6
    assert n_of(x) == 6
    with pytest.raises(CapacityError):
        f(x)
    assert f(x, n_max=6) == direct_embed(encode(x))
    with pytest.raises(CapacityError):
        epsilon(y("", Fraction(-1, 2)))  # n_x = 5 needs block 6
    epsilon(y("", Fraction(1, 2)))
    epsilon(y("", Fraction(-1, 2)), n_max=6)


@pytest.mark.parametrize("x, exponent", [
    (HamelVector(), 18), (y(""), 146), (y("1") + y("101"), 1170)])
def test_epsilon_examples(x, exponent):
    assert epsilon(x) == Fraction(1, 3 ** exponent)


def test_f_examples():
    assert f(HamelVector()) == 0
    assert f(y("")) == embed(encode(y("")))
    assert f(y("1") + y("")) == f(y("") + y("1"))


def test_separation_and_first_bit():
    rng = random.Random(7)
    for _ in range(300):
        s, t = random_close_pair(rng)
        m = first_difference_bit(s, t)
        diff = abs(embed(s) - embed(t))
        if m is None:
            assert s == t and diff == 0
        else:
            assert diff >= Fraction(1, 3 ** (m + 1))
            assert diff <= Fraction(1, 3 ** m)


def test_modulus_both_directions():
    rng = random.Random(11)
    for _ in range(300):
        s, t = random_close_pair(rng)
        diff = abs(embed(s) - embed(t))
        for k in range(6):
            agree = all(s[i] == t[i] for i in range(k))
            if diff < Fraction(1, 3 ** block_offset(k)):
                assert agree
                assert k == 0 or distance(s, t) < Fraction(1, 2 ** (k - 1))
            if agree:
                assert diff < Fraction(3, 3 ** block_offset(k))
            assert separated(s, t, k) == (diff >= Fraction(1, 3 ** block_offset(k)))


def test_values_bounded_with_power_of_three_denominators():
    rng = random.Random(3)
    for _ in range(200):
        v = embed(random_codepoint(rng))
        assert 0 <= v < 1
        d = v.denominator
        while d % 3 == 0:
            d //= 3
        assert d == 1


def test_bit_positions_sorted_within_blocks():
    t = encode(y("") + y("1"))
    pos = bit_positions(t)
    assert pos == sorted(pos)
    assert all(p < block_offset(len(t.coords)) for p in pos)


@settings(max_examples=60, deadline=None)
@given(hamel_vectors(max_terms=2), hamel_vectors(max_terms=2))
def test_gap_is_exact_difference(x, s):
    try:
        g = gap(x, s)
        expected = abs(f(x + s) - f(x - s))
    except CapacityError:
        return
    assert g == expected


def test_format_ternary():
    assert format_ternary(Fraction(0)) == "0"
    assert format_ternary(Fraction(2, 9)) == "2/3^2"
    assert format_ternary(Fraction(5, 3 ** 1170)) == "5/3^1170"
    assert format_ternary(Fraction(1, 2)) == "1/2"


@settings(max_examples=60, deadline=None)
@given(hamel_vectors(), st.integers(0, 5))
def test_code_ranks_match_encoding(x, k):
    code = encode(x)
    ranks = code_ranks(x, k)
    assert len(ranks) == k
    for i in range(k):
        assert ranks[i] == sorted(entry_rank(e) for e in code[i])


@settings(max_examples=60, deadline=None)
@given(hamel_vectors(), hamel_vectors(), st.integers(1, 4))
def test_ranks_numerator_decides_separation(u, v, k):
    same = ranks_numerator(code_ranks(u, k)) == ranks_numerator(code_ranks(v, k))
    assert same == (not separated(encode(u), encode(v), k))


@settings(max_examples=40, deadline=None)
@given(hamel_vectors(), hamel_vectors(), st.integers(0, 40))
def test_gap_at_least_matches_fraction(x, s, k):
    try:
        g = gap(x, s)
    except CapacityError:
        return
    assert gap_at_least(x, s, k) == (g >= Fraction(1, 3 ** k))
