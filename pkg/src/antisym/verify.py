"""Checking harness for the coding map.

Covers the key implication (if ``n_x <= max(n_{x-s}, n_{x+s})`` then the
codes of ``x-s`` and ``x+s`` differ at coordinate ``n_x``), its proof's case
split, the finite exceptional set ``Z_x``, and seeded campaigns around them.
"""

import enum
import itertools
import random
import time
from functools import lru_cache
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence

from antisym.embedding import (
    DEFAULT_N_MAX, block_offset, code_ranks, epsilon, gap, gap_at_least, ranks_numerator,
    separated)
from antisym.encoder import (
    EMPTY, CodePoint, CoordinateEntry, _coordinate, coordinate, eta_selector,
    extensions, xi_selector)
from antisym.hamel import HamelVector, check_label, n_of, restrict
from antisym.rationals import below_mask, index_of, nth_rational

__all__ = [
    "ProofBranch", "BranchTrace", "VerificationReport", "PreconditionError",
    "SizeGuardError", "z_set", "z_contains", "membership_predicate", "gap",
    "branch_trace", "classify_branch", "branch_consequent", "code_prefix",
    "random_vector", "exhaustive_lemma_check", "random_lemma_campaign",
    "containment_campaign", "branch_coverage", "DEFAULT_FRESH_LABELS",
]

DEFAULT_Z_CAP = 10 ** 6
DEFAULT_PAIR_CAP = 10 ** 6
DEFAULT_FRESH_LABELS = ("", "1", "01", "11", "001", "101")
DEFAULT_CAMPAIGN_LABELS = ("1", "11", "100000001")


class ProofBranch(str, enum.Enum):
    SHORTER_SIDE = "SHORTER_SIDE"
    S_EMPTY = "S_EMPTY"
    ETA_PRIME_ONE_SIDE = "ETA_PRIME_ONE_SIDE"
    CASE1 = "CASE1"
    CASE2 = "CASE2"
    CASE3 = "CASE3"


class PreconditionError(ValueError):
    pass


class SizeGuardError(ValueError):
    pass


@dataclass
class VerificationReport:
    campaign: str
    seed: Optional[int] = None
    pairs_checked: int = 0
    counts: Counter = field(default_factory=Counter)
    violations: List[dict] = field(default_factory=list)
    branch_histogram: Counter = field(default_factory=Counter)
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def violate(self, check: str, **inputs):
        self.violations.append({"check": check,
                                **{k: _jsonable(v) for k, v in inputs.items()}})

    def merge(self, other: "VerificationReport"):
        self.pairs_checked += other.pairs_checked
        self.counts.update(other.counts)
        self.violations.extend(other.violations)
        self.branch_histogram.update(other.branch_histogram)
        self.elapsed_ms += other.elapsed_ms

    def to_json(self) -> dict:
        return {
            "campaign": self.campaign,
            "seed": self.seed,
            "pairs_checked": self.pairs_checked,
            "counts": dict(sorted(self.counts.items())),
            "violations": self.violations,
            "branch_histogram": {b.value: self.branch_histogram.get(b.value, 0)
                                 for b in ProofBranch},
            "elapsed_ms": round(self.elapsed_ms, 3),
            "pass": self.passed,
            **self.extra,
        }


def _jsonable(v):
    if isinstance(v, (HamelVector, Fraction)):
        return str(v)
    if isinstance(v, enum.Enum):
        return v.value
    return v


# -- the exceptional set ------------------------------------------------------

def z_set(x: HamelVector, cap: int = DEFAULT_Z_CAP) -> FrozenSet[HamelVector]:
    """``{v - x : v = sum p_eta y(eta) over w_x, each p_eta in {q_j : j < n_x}}``."""
    n = n_of(x)
    support = x.support
    if n ** len(support) > cap:
        raise SizeGuardError(f"|Z_x| = {n}**{len(support)} exceeds cap {cap}")
    values = [nth_rational(j) for j in range(n)]
    out = set()
    for combo in itertools.product(values, repeat=len(support)):
        out.add(HamelVector(zip(support, combo)) - x)
    return frozenset(out)


def z_contains(x: HamelVector, s: HamelVector, n: Optional[int] = None) -> bool:
    """``s in z_set(x)`` without enumerating the set."""
    if n is None:
        n = n_of(x)
    return _in_z(x + s, set(x.support), n)


def _in_z(plus, w, n):
    # s = v - x with v = x + s supported on w_x, coefficients among q_j, j < n_x
    return all(label in w and index_of(c) < n for label, c in plus.items())


def membership_predicate(x: HamelVector, s: HamelVector) -> bool:
    """``w_{x+s}`` is contained in ``w_x`` and ``n_{x+s} < n_x``."""
    plus = x + s
    return set(plus.support) <= set(x.support) and n_of(plus) < n_of(x)


# -- the case split -----------------------------------------------------------

@dataclass(frozen=True)
class BranchTrace:
    branch: ProofBranch
    n_x: int
    n_minus: int
    n_plus: int
    eta_hat: Optional[str] = None
    zeta: Optional[str] = None
    eta_prime: Optional[str] = None


def branch_trace(x: HamelVector, s: HamelVector) -> BranchTrace:
    """Follow the proof's decision tree for the pair ``(x, s)``."""
    if not s:
        raise PreconditionError("s must be nonzero")
    minus, plus = x - s, x + s
    n, nm, np_ = n_of(x), n_of(minus), n_of(plus)
    if n > max(nm, np_):
        raise PreconditionError(
            f"n_x = {n} exceeds max(n_(x-s), n_(x+s)) = {max(nm, np_)}")
    if min(nm, np_) < n:
        return BranchTrace(ProofBranch.SHORTER_SIDE, n, nm, np_)
    differing = sorted(label for label in set(minus.support) | set(plus.support)
                       if minus.coefficient(label) != plus.coefficient(label))
    eta_hat = differing[0]
    zeta = restrict(eta_hat, n)
    above = extensions(x, zeta)
    assert len(above) <= 1, "prefixes of length n_x separate the support"
    if not above:
        return BranchTrace(ProofBranch.S_EMPTY, n, nm, np_, eta_hat, zeta)
    eta_prime = above[0]
    in_minus = minus.coefficient(eta_prime) != 0
    in_plus = plus.coefficient(eta_prime) != 0
    if in_minus != in_plus:
        branch = ProofBranch.ETA_PRIME_ONE_SIDE
    elif eta_prime != eta_selector(minus, zeta):
        branch = ProofBranch.CASE1
    elif minus.coefficient(eta_prime) != plus.coefficient(eta_prime):
        branch = ProofBranch.CASE2
    else:
        branch = ProofBranch.CASE3
    return BranchTrace(branch, n, nm, np_, eta_hat, zeta, eta_prime)


def classify_branch(x: HamelVector, s: HamelVector) -> ProofBranch:
    return branch_trace(x, s).branch


def _entry_at(coord, zeta) -> Optional[CoordinateEntry]:
    for e in coord:
        if e.zeta == zeta:
            return e
    return None


def branch_consequent(x: HamelVector, s: HamelVector, trace: BranchTrace) -> Optional[str]:
    """Check the inequality the proof derives in ``trace.branch``.

    Returns ``None`` when it holds, else a short description of what failed.
    """
    minus, plus = x - s, x + s
    n = trace.n_x
    a = coordinate(minus, n, trace.n_minus)
    b = coordinate(plus, n, trace.n_plus)
    br = trace.branch
    if br is ProofBranch.SHORTER_SIDE:
        if trace.n_minus < n:
            ok = a == EMPTY and b != EMPTY
        else:
            ok = b == EMPTY and a != EMPTY
        return None if ok else "shorter side not empty against nonempty"

    zeta = trace.zeta
    ea, eb = _entry_at(a, zeta), _entry_at(b, zeta)
    if br is ProofBranch.ETA_PRIME_ONE_SIDE:
        pa = ea.parity if ea else 0
        pb = eb.parity if eb else 0
        return None if pa != pb else "parities agree at zeta"
    if ea is None or eb is None:
        return "missing entry at zeta"

    if br in (ProofBranch.S_EMPTY, ProofBranch.CASE1):
        la, lb = eta_selector(minus, zeta), eta_selector(plus, zeta)
        if la != lb or la in x.support:
            return "eta selectors differ or lie in w_x"
        if minus.coefficient(la) + plus.coefficient(lb) != 0:
            return "eta coefficients do not cancel"
        return None if (0 in ea.k_eta) != (0 in eb.k_eta) else "q_0 does not separate"
    if br is ProofBranch.CASE2:
        q = x.coefficient(trace.eta_prime)
        j = index_of(q)
        if j >= n:
            return "coefficient of x above zeta not among q_j, j < n_x"
        ca = minus.coefficient(trace.eta_prime)
        cb = plus.coefficient(trace.eta_prime)
        if ca + cb != 2 * q:
            return "eta coefficients do not average to q_(x,eta')"
        return None if (j in ea.k_eta) != (j in eb.k_eta) else "q_(x,eta') does not separate"
    # CASE3
    la, lb = xi_selector(minus, zeta), xi_selector(plus, zeta)
    if la != lb or la in x.support:
        return "xi selectors differ or lie in w_x"
    if minus.coefficient(la) + plus.coefficient(lb) != 0:
        return "xi coefficients do not cancel"
    return None if (0 in ea.k_xi) != (0 in eb.k_xi) else "q_0 does not separate xi"


# -- shared pair check --------------------------------------------------------

def code_prefix(u: HamelVector, k: int, n: Optional[int] = None) -> CodePoint:
    """``encode(u)`` cut to coordinates ``0 .. k-1`` without computing the rest."""
    if n is None:
        n = n_of(u)
    stop = min(k, n + 1) if u else 0
    if stop <= 0:
        return CodePoint()
    masks = {label: below_mask(c, stop) for label, c in u.items()}
    return CodePoint._trusted(tuple(_coordinate(u, i, masks) for i in range(stop)))


def _check_lemma_pair(x, s, report, n=None):
    if n is None:
        n = n_of(x)
    minus, plus = x - s, x + s
    nm, np_ = n_of(minus), n_of(plus)
    report.pairs_checked += 1

    # equal-n side condition: codes agreeing on 0..n_x force n_(x-s) = n_(x+s)
    pm, pp = code_prefix(minus, n + 1, nm), code_prefix(plus, n + 1, np_)
    if pm == pp:
        report.counts["close_pairs"] += 1
        if nm != np_:
            report.violate("equal_n", x=x, s=s, n_minus=nm, n_plus=np_)

    if n > max(nm, np_):
        report.counts["antecedent_false"] += 1
        return
    report.counts["antecedent_true"] += 1
    if pm[n] == pp[n]:
        report.violate("lemma", x=x, s=s, n_x=n)
    trace = branch_trace(x, s)
    report.branch_histogram[trace.branch.value] += 1
    failure = branch_consequent(x, s, trace)
    if failure is not None:
        report.violate("branch_consequent", x=x, s=s, branch=trace.branch,
                       detail=failure)


def _vectors(labels, values) -> Iterable[HamelVector]:
    for combo in itertools.product(values, repeat=len(labels)):
        yield HamelVector(zip(labels, combo))


def exhaustive_lemma_check(universe: Sequence[str], max_index: int,
                           cap: int = DEFAULT_PAIR_CAP) -> VerificationReport:
    """Check the key implication on every pair over ``universe`` with coefficients ``q_j``, ``j < max_index``."""
    start = time.perf_counter()
    labels = [check_label(lb) for lb in universe]
    count = max_index ** len(labels)
    if count * count > cap:
        raise SizeGuardError(f"{count}**2 pairs exceed cap {cap}")
    report = VerificationReport("exhaustive_lemma")
    report.extra.update(universe=list(labels), max_index=max_index, vectors=count)
    values = [nth_rational(j) for j in range(max_index)]
    vectors = list(_vectors(labels, values))
    for x in vectors:
        n = n_of(x)
        for s in vectors:
            if s:
                _check_lemma_pair(x, s, report, n)
            else:
                report.counts["s_zero_skipped"] += 1
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def random_vector(rng: random.Random, labels: Sequence[str], max_index: int) -> HamelVector:
    """Each label gets ``q_j`` for uniform ``j < max_index`` (``j = 0`` drops it)."""
    values = _values(max_index)
    terms = {}
    for lb in sorted(labels):
        q = values[rng.randrange(max_index)]
        if q:
            terms[check_label(lb)] = q
    return HamelVector._trusted(terms)


@lru_cache(maxsize=32)
def _values(max_index):
    return tuple(nth_rational(j) for j in range(max_index))


def random_lemma_campaign(labels: Sequence[str] = DEFAULT_CAMPAIGN_LABELS,
                          max_index: int = 8, pairs: int = 10 ** 4,
                          seed: int = 0) -> VerificationReport:
    start = time.perf_counter()
    labels = [check_label(lb) for lb in labels]
    rng = random.Random(seed)
    report = VerificationReport("random_lemma", seed=seed)
    report.extra.update(labels=list(labels), max_index=max_index)
    while report.pairs_checked < pairs:
        x = random_vector(rng, labels, max_index)
        s = random_vector(rng, labels, max_index)
        if s:
            _check_lemma_pair(x, s, report)
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def branch_coverage(seed: int = 0, pairs: int = 10 ** 4,
                    max_index: int = 8) -> VerificationReport:
    """Exhaustive run on ``{"", "1"}`` (indices < 5) plus a seeded random campaign."""
    report = VerificationReport("branch_coverage", seed=seed)
    report.merge(exhaustive_lemma_check(("", "1"), 5))
    report.merge(random_lemma_campaign(DEFAULT_CAMPAIGN_LABELS, max_index, pairs, seed))
    return report


# -- containment --------------------------------------------------------------

def containment_campaign(x: HamelVector, sample_count: int, seed: int = 0,
                         max_index: int = 8,
                         fresh_labels: Sequence[str] = DEFAULT_FRESH_LABELS,
                         n_max: int = DEFAULT_N_MAX,
                         z_cap: int = DEFAULT_Z_CAP,
                         exact_gap_limit: int = 200) -> VerificationReport:
    """Probe the claim that near-symmetric shifts of ``x`` all lie in ``z_set(x)``.

    Every ``s`` in ``z_set(x)`` gets its code distance and gap recorded; each
    sampled ``s`` outside it must keep code distance ``>= delta(x)`` and gap
    ``>= epsilon(x)``. The gap bound is decided exactly from the embedding's
    leading blocks; the first ``exact_gap_limit`` samples whose values fit
    within ``n_max`` also compute the full gap as a cross-check.
    """
    start = time.perf_counter()
    rng = random.Random(seed)
    n = n_of(x)
    epsilon(x, n_max)  # raises CapacityError when n_x + 1 > n_max
    dlt = Fraction(1, 2 ** n)
    k = n + 1
    report = VerificationReport("containment", seed=seed)

    zs = z_set(x, z_cap)
    expected = n ** len(x)
    report.counts["z_size"] = len(zs)
    if len(zs) != expected:
        report.violate("z_size", x=x, size=len(zs), expected=expected)

    exceptional = []
    for s in sorted(zs, key=str):
        minus, plus = x - s, x + s
        nm, np_ = n_of(minus), n_of(plus)
        pm, pp = code_prefix(minus, k, nm), code_prefix(plus, k, np_)
        close = pm == pp
        if close:
            exceptional.append(str(s))
            if nm != np_:
                report.violate("equal_n", x=x, s=s, n_minus=nm, n_plus=np_)
        if separated(pm, pp, k) == close:
            report.violate("gap_vs_distance", x=x, s=s)
        if membership_predicate(x, s):
            report.counts["predicate_true"] += 1
        report.pairs_checked += 1

    w = set(x.support)
    labels = sorted(w | {check_label(lb) for lb in fresh_labels})
    accepted = attempts = exact = 0
    while accepted < sample_count:
        attempts += 1
        if attempts > 100 * sample_count + 1000:
            raise RuntimeError("could not sample enough shifts outside z_set(x)")
        s = random_vector(rng, labels, max_index)
        plus = x + s
        np_ = n_of(plus)
        inside = _in_z(plus, w, n)
        if np_ < n and set(plus.support) <= w:
            report.counts["predicate_true"] += 1
            if not inside:
                report.violate("predicate_containment", x=x, s=s)
        if inside:
            report.counts["rejected_inside_z"] += 1
            continue
        accepted += 1
        minus = x - s
        nm = n_of(minus)
        rm, rp = code_ranks(minus, k, nm), code_ranks(plus, k, np_)
        if rm == rp:
            report.violate("distance_below_delta", x=x, s=s, delta=dlt)
            if nm != np_:
                report.violate("equal_n", x=x, s=s, n_minus=nm, n_plus=np_)
        if ranks_numerator(rm) == ranks_numerator(rp):
            report.violate("gap_below_epsilon", x=x, s=s, epsilon="3^-%d" % block_offset(k))
        if exact < exact_gap_limit and max(nm, np_) <= n_max:
            exact += 1
            if not gap_at_least(x, s, block_offset(k), n_max):
                report.violate("exact_gap_below_epsilon", x=x, s=s)
        report.pairs_checked += 1

    report.counts["sampled"] = accepted
    report.counts["exact_gaps"] = exact
    report.extra.update(
        x=str(x), n_x=n, delta=str(dlt), epsilon_exponent=block_offset(k),
        z_expected=expected, exceptional=exceptional)
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report
