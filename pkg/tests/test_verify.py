import random
from fractions import Fraction
from functools import cmp_to_key

import pytest
from hypothesis import given, settings, strategies as st

from antisym.embedding import epsilon, f, gap
from antisym.encoder import coordinate, encode, distance
from antisym.hamel import HamelVector, n_of, y
from antisym.verify import (
    PreconditionError, ProofBranch, SizeGuardError, branch_consequent, branch_trace,
    classify_branch, containment_campaign, exhaustive_lemma_check,
    membership_predicate, random_lemma_campaign, z_contains, z_set)

from conftest import hamel_vectors, oracle_n, padded_cmp

B = ProofBranch


def oracle_branch(x, s):
    """The proof's case split, re-derived from the raw term maps."""
    xm, xp, xt = (x - s).terms, (x + s).terms, x.terms
    n, nm, np_ = oracle_n(x), oracle_n(x - s), oracle_n(x + s)
    if min(nm, np_) < n:
        return B.SHORTER_SIDE
    diff = [lb for lb in set(xm) | set(xp) if xm.get(lb, 0) != xp.get(lb, 0)]
    eta_hat = min(diff, key=cmp_to_key(padded_cmp))
    zeta = eta_hat.ljust(n, "0")[:n]
    above = [lb for lb in xt if lb.ljust(n, "0")[:n] == zeta]
    if not above:
        return B.S_EMPTY
    (eta_p,) = above
    if (eta_p in xm) != (eta_p in xp):
        return B.ETA_PRIME_ONE_SIDE
    ext = sorted((lb for lb in xm if lb.ljust(n, "0")[:n] == zeta), key=cmp_to_key(padded_cmp))
    if ext[0] != eta_p:
        return B.CASE1
    return B.CASE2 if xm[eta_p] != xp[eta_p] else B.CASE3


# -- Z_x ----------------------------------------------------------------------

def test_z_set_zero():
    assert z_set(HamelVector()) == {HamelVector()}


def test_z_set_single():
    assert z_set(y("")) == {y("", -1), HamelVector()}


@settings(deadline=None)
@given(hamel_vectors(max_terms=2))
def test_z_set_size(x):
    if n_of(x) ** len(x) > 5000:
        return
    zs = z_set(x)
    assert len(zs) == n_of(x) ** len(x)
    assert HamelVector() in zs
    assert all(z_contains(x, s) for s in zs)


def test_z_set_guard():
    with pytest.raises(SizeGuardError):
        z_set(y("") + y("1") + y("01"), cap=4)


@given(hamel_vectors(max_terms=2), hamel_vectors(max_terms=2))
def test_z_contains_matches_enumeration(x, s):
    if n_of(x) ** len(x) > 2000:
        return
    assert z_contains(x, s) == (s in z_set(x))


def test_membership_examples():
    assert membership_predicate(y(""), y("", -1))
    assert not membership_predicate(y(""), y("1"))
    assert not membership_predicate(HamelVector(), y("1"))


@given(hamel_vectors(max_terms=2), hamel_vectors(max_terms=2))
def test_predicate_implies_enumerated(x, s):
    if membership_predicate(x, s):
        assert z_contains(x, s)


# -- gap ----------------------------------------------------------------------

def test_gap_examples():
    assert gap(y("") + y("1"), HamelVector()) == 0
    assert gap(HamelVector(), y("")) == abs(f(y("")) - f(y("", -1)))
    assert gap(HamelVector(), y("")) > 0
    x, s = y(""), y("1")
    assert not z_contains(x, s)
    assert gap(x, s) >= epsilon(x)


# -- the case split -----------------------------------------------------------

@pytest.mark.parametrize("x, s, branch", [
    (y(""), y("1", 2), B.S_EMPTY),
    (y(""), y(""), B.SHORTER_SIDE),  # x - s = 0 has n = 1 < 2
    (y(""), y("", Fraction(1, 2)), B.CASE2),
    (y(""), y("") + y("1"), B.ETA_PRIME_ONE_SIDE),
    (y("100000001"), y("1"), B.CASE1),
    (y("1"), y("100000001"), B.CASE3),
])
def test_classify_examples(x, s, branch):
    assert classify_branch(x, s) == branch == oracle_branch(x, s)
    assert branch_consequent(x, s, branch_trace(x, s)) is None


def test_classify_preconditions():
    with pytest.raises(PreconditionError):
        classify_branch(y(""), HamelVector())
    # x - s = 0 and x + s = y() both have smaller n than x
    half = y("", Fraction(1, 2))
    assert n_of(half) == 4
    with pytest.raises(PreconditionError):
        classify_branch(half, half)

@settings(max_examples=300, deadline=None)
@given(hamel_vectors(), hamel_vectors())
def test_classification_agrees_with_oracle(x, s):
    if not s:
        return
    try:
        oracle_n(x - s), oracle_n(x + s)
    except KeyError:
        return  # coefficient beyond the oracle table
    n = n_of(x)
    if n > max(n_of(x - s), n_of(x + s)):
        with pytest.raises(PreconditionError):
            classify_branch(x, s)
        return
    trace = branch_trace(x, s)
    assert trace.branch == oracle_branch(x, s)
    assert branch_consequent(x, s, trace) is None
    assert coordinate(x - s, n) != coordinate(x + s, n)


# -- campaigns ----------------------------------------------------------------

def test_exhaustive_examples():
    r = exhaustive_lemma_check(("", "1"), 3)
    assert r.passed
    assert r.pairs_checked + r.counts["s_zero_skipped"] == 81
    assert exhaustive_lemma_check(("",), 2).passed
    empty = exhaustive_lemma_check((), 4)
    assert empty.passed and empty.pairs_checked == 0


def test_exhaustive_guard():
    with pytest.raises(SizeGuardError):
        exhaustive_lemma_check(("", "1", "01"), 8, cap=1000)


def test_report_json_shape():
    r = exhaustive_lemma_check(("",), 3)
    j = r.to_json()
    for key in ("campaign", "seed", "pairs_checked", "violations",
                "branch_histogram", "elapsed_ms", "pass"):
        assert key in j
    assert set(j["branch_histogram"]) == {b.value for b in B}
    assert j["pass"] is True


def test_random_campaign_deterministic():
    a = random_lemma_campaign(pairs=300, seed=5)
    b = random_lemma_campaign(pairs=300, seed=5)
    assert a.branch_histogram == b.branch_histogram
    assert a.passed


def test_containment_at_zero():
    r = containment_campaign(HamelVector(), 200, seed=1)
    assert r.passed
    assert r.counts["z_size"] == 1
    s = y("1")
    assert distance(encode(-s), encode(s)) >= Fraction(1, 2)
    assert gap(HamelVector(), s) >= Fraction(1, 3 ** 18)


def test_containment_two_terms():
    x = y("") + y("1", Fraction(1, 2))
    r = containment_campaign(x, 500, seed=2)
    assert r.passed, r.violations[:3]
    zs = {str(s) for s in z_set(x)}
    assert set(r.extra["exceptional"]) <= zs
    assert exhaustive_lemma_check(("", "1"), 4).passed


def test_containment_records_equal_n():
    x = y("") + y("1")
    r = containment_campaign(x, 100, seed=3)
    assert r.passed
    assert r.extra["n_x"] == 2
    assert "0" in r.extra["exceptional"]
