"""Preference elicitation with low query complexity.

One voter is elicited exactly by a comparison merge sort. When earlier
voters' distinct preferences admit a single crossing tree closure, a new
voter is first searched for inside that tree: repeatedly split at the
centroid, discard subtrees whose side of a disagreement pair the voter
rejects, and verify the final candidate pair by pair. Only genuinely new
preferences fall back to the full sort, which can happen at most
m(m-1)/2 + 1 times for in-domain profiles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .closure import ClosureInconsistencyError, CyclicMajorityError, triad_closure
from .oracle import CountingMemoOracle, QueryOracle
from .prefs import Preference, Profile, VoterSequence, disagreement_pairs
from .sctree import (
    NoTreeError,
    VoterTree,
    build_sc_tree,
    centroid_of,
    subtree_sizes_after_removal,
)


class DomainViolationError(Exception):
    """The hidden profile is not weakly single crossing on trees."""

    def __init__(self, certificate: Exception):
        self.certificate = certificate
        super().__init__(f"hidden profile left the domain: {certificate}")


def elicit_full(oracle: QueryOracle, voter: int, m: int) -> Preference:
    """Exact elicitation of one voter by merge sort; <= m*ceil(log2 m) queries."""

    def merge_sort(items: list[int]) -> list[int]:
        if len(items) <= 1:
            return items
        mid = len(items) // 2
        left = merge_sort(items[:mid])
        right = merge_sort(items[mid:])
        out: list[int] = []
        i = j = 0
        while i < len(left) and j < len(right):
            if oracle.answer(voter, left[i], right[j]):
                out.append(left[i])
                i += 1
            else:
                out.append(right[j])
                j += 1
        out.extend(left[i:])
        out.extend(right[j:])
        return out

    return Preference(tuple(merge_sort(list(range(m)))))


def verify_equals(oracle: QueryOracle, voter: int, candidate_pref: Preference) -> bool:
    """Check the voter's preference equals candidate_pref with m-1 queries.

    Agreement on all consecutive pairs of a linear order forces equality by
    transitivity.
    """
    order = candidate_pref.order
    for a, b in zip(order, order[1:]):
        if not oracle.answer(voter, a, b):
            return False
    return True


def search_in_tree(
    oracle: QueryOracle, voter: int, closure: Profile, t: VoterTree
) -> Preference | None:
    """Search the voter's preference among the nodes of a single crossing tree.

    While at least 3 nodes remain, split at the centroid r and scan r's
    neighbor subtrees in nonincreasing size order (node index breaks ties):
    for each neighbor, ask the lexicographically smallest pair the two
    endpoints order differently; agreement with r discards the subtree,
    disagreement descends into it. The final candidate is confirmed with
    verify_equals, so a wrong preference is never returned.
    """
    if len(closure.preference_set()) != closure.n:
        raise ValueError("closure must have distinct preferences")
    if {(v, q.order) for v, q in t.nodes} != {(v, q.order) for v, q in closure.voters}:
        raise ValueError("tree must be built on the closure profile")
    adj = t.adjacency()
    active = set(range(t.size))
    while len(active) >= 3:
        r = centroid_of(adj, active)
        sizes = subtree_sizes_after_removal(adj, active, r)
        neighbors = sorted(sizes, key=lambda u: (-sizes[u], u))
        descended = False
        for u in neighbors:
            pref_r = t.nodes[r][1]
            pref_u = t.nodes[u][1]
            x, y = min(disagreement_pairs(pref_r, pref_u))
            if not pref_r.prefers(x, y):
                x, y = y, x
            comp = _component(adj, active, u, blocked=r)
            if oracle.answer(voter, x, y):
                active -= comp
            else:
                active = comp
                descended = True
                break
        if not descended:
            active = {r}
    if len(active) == 2:
        a, b = sorted(active)
        x, y = min(disagreement_pairs(t.nodes[a][1], t.nodes[b][1]))
        if not t.nodes[a][1].prefers(x, y):
            x, y = y, x
        final = a if oracle.answer(voter, x, y) else b
    else:
        (final,) = active
    candidate = t.nodes[final][1]
    return candidate if verify_equals(oracle, voter, candidate) else None


def _component(
    adj: list[list[int]], active: set[int], start: int, blocked: int
) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for z in adj[w]:
            if z in active and z != blocked and z not in seen:
                seen.add(z)
                stack.append(z)
    return seen


@dataclass
class ElicitationResult:
    profile: Profile
    per_voter_queries: dict[int, int] = field(default_factory=dict)
    per_voter_search_queries: dict[int, int] = field(default_factory=dict)
    fallback_count: int = 0
    total_queries: int = 0


def elicit_sequential(
    oracle: CountingMemoOracle,
    m: int,
    arrival: VoterSequence,
    progress: list[tuple[int, Preference]] | None = None,
) -> ElicitationResult:
    """Elicit all voters in arrival order against a weakly single crossing
    hidden profile.

    The first voter (and every voter whose preference is absent from the
    running closure tree) is sorted in full; everyone else is found by
    search_in_tree. The closure and its tree are recomputed only when the
    set of distinct seen preferences grows. A mid-run closure or tree
    failure certifies the hidden profile is out of domain and raises
    DomainViolationError.
    """
    seen: list[Preference] = []
    elicited: list[tuple[int, Preference]] = progress if progress is not None else []
    per_voter: dict[int, int] = {}
    per_voter_search: dict[int, int] = {}
    fallbacks = 0
    closure_profile: Profile | None = None
    tree: VoterTree | None = None
    for voter in arrival.order:
        before = oracle.query_count
        found: Preference | None = None
        if seen:
            if tree is None:
                try:
                    cres = triad_closure(Profile.from_preferences(seen))
                    tree = build_sc_tree(cres.closure)
                    closure_profile = cres.closure
                except (CyclicMajorityError, NoTreeError, ClosureInconsistencyError) as e:
                    raise DomainViolationError(e) from e
            assert closure_profile is not None
            found = search_in_tree(oracle, voter, closure_profile, tree)
        per_voter_search[voter] = oracle.query_count - before
        if found is None:
            found = elicit_full(oracle, voter, m)
            fallbacks += 1
            if found.order not in {q.order for q in seen}:
                seen.append(found)
                tree = None  # closure must be rebuilt for the grown Q
        elicited.append((voter, found))
        per_voter[voter] = oracle.query_count - before
    return ElicitationResult(
        profile=Profile(tuple(elicited), m),
        per_voter_queries=per_voter,
        per_voter_search_queries=per_voter_search,
        fallback_count=fallbacks,
        total_queries=oracle.query_count,
    )


def naive_elicit_all(
    oracle: CountingMemoOracle, m: int, arrival: VoterSequence
) -> ElicitationResult:
    """Baseline: full merge sort for every voter."""
    elicited = []
    per_voter = {}
    for voter in arrival.order:
        before = oracle.query_count
        elicited.append((voter, elicit_full(oracle, voter, m)))
        per_voter[voter] = oracle.query_count - before
    return ElicitationResult(
        profile=Profile(tuple(elicited), m),
        per_voter_queries=per_voter,
        fallback_count=len(arrival.order),
        total_queries=oracle.query_count,
    )


def query_budget(m: int, n: int) -> int:
    """Empirical-constant version of the O(mn + min(m^2, n) m log m) bound."""
    log_m = max(1, math.ceil(math.log2(m))) if m > 1 else 0
    return 4 * m * n + 8 * min(m * m, n) * m * log_m
