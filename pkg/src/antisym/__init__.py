"""Exact construction and checking of a uniformly antisymmetric function.

Reals are modelled symbolically as finite rational combinations of Hamel
basis vectors indexed by binary sequences; ``f = embed . encode`` maps them
to rationals in ``[0, 1)`` with power-of-3 denominators.
"""

from antisym.embedding import (
    DEFAULT_N_MAX, CapacityError, block_offset, embed, epsilon, f, gap)
from antisym.encoder import CodePoint, CoordinateEntry, delta, distance, encode
from antisym.hamel import HamelVector, LabelError, lex_compare, n_of, restrict, y
from antisym.kernels import BACKEND
from antisym.rationals import KSet, index_of, k_set, nth_rational
from antisym.verify import (
    ProofBranch, VerificationReport, classify_branch, containment_campaign,
    exhaustive_lemma_check, membership_predicate, z_set)

__version__ = "0.1.0"
