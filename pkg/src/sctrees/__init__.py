"""Toolkit for weakly single crossing preference profiles on trees."""

from .closure import (
    ClosureInconsistencyError,
    ClosureResult,
    CyclicMajorityError,
    satisfies_triad_majority,
    triad_closure,
    verify_minimality,
)
from .elicit import (
    DomainViolationError,
    ElicitationResult,
    elicit_full,
    elicit_sequential,
    naive_elicit_all,
    search_in_tree,
    query_budget,
    verify_equals,
)
from .gen import GenSpec, gen_negative, gen_sc_tree_profile, subsample_weakly_sc
from .oracle import (
    AdversarialStarOracle,
    CountingMemoOracle,
    PendingQuery,
    SessionOracle,
    SimulatedOracle,
    star_tree,
)
from .prefs import (
    MajorityRelation,
    Preference,
    Profile,
    VoterSequence,
    as_linear_order,
    dedupe,
    disagreement_pairs,
    is_single_crossing_sequence,
    majority_relation,
    prefers,
)
from .recognize import (
    Certificate,
    RecognitionOutcome,
    bruteforce_weakly_sc,
    recognize_weakly_sc,
)
from .sctree import (
    NoTreeError,
    Split,
    VoterTree,
    build_sc_tree,
    bruteforce_sc_tree,
    candidate_pair_splits,
    centroid_splitter,
    expand_duplicates,
    max_degree,
    verify_single_crossing_tree,
)

__all__ = [name for name in dir() if not name.startswith("_")]
