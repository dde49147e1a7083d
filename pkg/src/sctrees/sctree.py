"""Voter trees: verification, construction, duplicate expansion, centroids.

A profile is single crossing with respect to a tree on its voters iff, for
every candidate pair, the voters on each side of the pair disagree across
at most one tree edge. For distinct preferences this pins the tree down:
every edge realizes exactly one merged voter bipartition, so edges connect
voters separated by exactly one bipartition. A Prüfer-sequence brute force
over all labeled trees serves as the independent oracle at small sizes.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .prefs import (
    Preference,
    Profile,
    VoterSequence,
    all_pairs,
    is_single_crossing_sequence,
)


class NoTreeError(Exception):
    """No single crossing tree exists; `reason` is machine readable."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


@dataclass(frozen=True)
class VoterTree:
    """Unrooted tree whose nodes carry (voter id, preference)."""

    nodes: tuple[tuple[int, Preference], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        n = len(self.nodes)
        ids = [v for v, _ in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("voter ids must be distinct")
        if len(self.edges) != max(n - 1, 0):
            raise ValueError("a tree on n nodes has n-1 edges")
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n and a != b):
                raise ValueError(f"bad edge ({a}, {b})")
        if n > 0 and len(self._component(0)) != n:
            raise ValueError("tree must be connected")

    @property
    def size(self) -> int:
        return len(self.nodes)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def _component(self, start: int) -> set[int]:
        adj = self.adjacency()
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def path(self, a: int, b: int) -> list[int]:
        """Node indices along the unique path from a to b, inclusive."""
        adj = self.adjacency()
        parent = {a: a}
        stack = [a]
        while stack:
            u = stack.pop()
            if u == b:
                break
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    stack.append(w)
        out = [b]
        while out[-1] != a:
            out.append(parent[out[-1]])
        return out[::-1]


@dataclass(frozen=True)
class Split:
    """Voter bipartition induced by one or more candidate pairs."""

    side_a: frozenset[int]
    side_b: frozenset[int]
    pairs: tuple[tuple[int, int], ...]

    def separates(self, i: int, j: int) -> bool:
        return (i in self.side_a) != (j in self.side_a)


def _check_same_voters(p: Profile, t: VoterTree) -> None:
    tree_voters = {(v, q.order) for v, q in t.nodes}
    profile_voters = {(v, q.order) for v, q in p.voters}
    if tree_voters != profile_voters:
        raise ValueError("tree voters and preferences must match the profile")


def verify_single_crossing_tree(p: Profile, t: VoterTree, mode: str = "cut") -> bool:
    """Check the single crossing property of t for p.

    mode="cut" counts, per candidate pair, the edges whose endpoints
    disagree (must be at most one). mode="path" checks every path's
    sub-profile directly; it is the slower cross-validation route.
    """
    _check_same_voters(p, t)
    if mode == "cut":
        sigs = [q.pair_signature() for _, q in t.nodes]
        seen = 0
        for a, b in t.edges:
            d = sigs[a] ^ sigs[b]
            if seen & d:
                return False
            seen |= d
        return True
    if mode == "path":
        for a, b in itertools.combinations(range(t.size), 2):
            path = t.path(a, b)
            ids = [t.nodes[i][0] for i in path]
            sub = Profile(tuple(t.nodes[i] for i in path), p.m)
            if not is_single_crossing_sequence(sub, VoterSequence(tuple(ids))):
                return False
        return True
    raise ValueError(f"unknown mode {mode!r}")


def candidate_pair_splits(p: Profile) -> list[Split]:
    """Nontrivial voter bipartitions, merged when induced by several pairs.

    Sides are sets of voter positions (0..n-1) in profile order; side_a is
    the side containing position 0.
    """
    n = p.n
    prefs = p.preferences()
    merged: dict[frozenset[int], list[tuple[int, int]]] = {}
    for x, y in all_pairs(p.m):
        for_x = frozenset(i for i in range(n) if prefs[i].rank[x] < prefs[i].rank[y])
        if not for_x or len(for_x) == n:
            continue
        key = for_x if 0 in for_x else frozenset(range(n)) - for_x
        merged.setdefault(key, []).append((x, y))
    everyone = frozenset(range(n))
    return [
        Split(side, everyone - side, tuple(pairs)) for side, pairs in merged.items()
    ]


def build_sc_tree(p: Profile) -> VoterTree:
    """Construct the single crossing tree of a distinct-preference profile.

    Distinct preferences force every edge to realize exactly one merged
    bipartition, so there must be exactly n-1 bipartitions and edges join
    voters separated by exactly one of them. The result is verified before
    being returned; failures raise NoTreeError with reasons
    wrong-split-count | not-a-tree | verification-failed.
    """
    if p.n == 0:
        raise ValueError("profile must be nonempty")
    if len(p.preference_set()) != p.n:
        raise ValueError("build_sc_tree requires distinct preferences (dedupe first)")
    splits = candidate_pair_splits(p)
    n = p.n
    if len(splits) != n - 1:
        raise NoTreeError("wrong-split-count")
    edges = tuple(
        (i, j)
        for i, j in itertools.combinations(range(n), 2)
        if sum(1 for s in splits if s.separates(i, j)) == 1
    )
    try:
        tree = VoterTree(p.voters, edges)
    except ValueError:
        raise NoTreeError("not-a-tree") from None
    if not verify_single_crossing_tree(p, tree):
        raise NoTreeError("verification-failed")
    return tree


def expand_duplicates(t: VoterTree, groups: dict[int, list[int]]) -> VoterTree:
    """Reattach duplicate voters as pendant leaves on their representatives.

    `groups` maps each node index of t to the original voter ids sharing
    that node's preference (the node's own id first).
    """
    if set(groups) != set(range(t.size)):
        raise ValueError("groups must cover exactly the tree's nodes")
    for idx, ids in groups.items():
        if t.nodes[idx][0] not in ids:
            raise ValueError(f"group {idx} omits its representative voter")
    nodes = list(t.nodes)
    edges = list(t.edges)
    for idx in range(t.size):
        rep_id = t.nodes[idx][0]
        pref = t.nodes[idx][1]
        for voter_id in groups[idx]:
            if voter_id == rep_id:
                continue
            edges.append((idx, len(nodes)))
            nodes.append((voter_id, pref))
    return VoterTree(tuple(nodes), tuple(edges))


def subtree_sizes_after_removal(
    adj: Sequence[Sequence[int]], active: set[int], r: int
) -> dict[int, int]:
    """Size of each connected component of active - {r}, keyed by the
    neighbor of r it contains."""
    sizes: dict[int, int] = {}
    seen = {r}
    for u in adj[r]:
        if u not in active or u in seen:
            continue
        comp = 0
        stack = [u]
        seen.add(u)
        while stack:
            w = stack.pop()
            comp += 1
            for z in adj[w]:
                if z in active and z not in seen:
                    seen.add(z)
                    stack.append(z)
        sizes[u] = comp
    return sizes


def centroid_of(adj: Sequence[Sequence[int]], active: set[int]) -> int:
    """Node of the induced subtree minimizing the largest remaining
    component; ties broken by smallest node index."""
    best = None
    best_key = None
    for r in sorted(active):
        sizes = subtree_sizes_after_removal(adj, active, r)
        worst = max(sizes.values(), default=0)
        if best_key is None or worst < best_key:
            best, best_key = r, worst
    assert best is not None
    return best


def centroid_splitter(t: VoterTree) -> int:
    """A node whose removal leaves components of size at most floor(n/2)."""
    if t.size < 3:
        raise ValueError("centroid splitter requires at least 3 nodes")
    return centroid_of(t.adjacency(), set(range(t.size)))


def max_degree(t: VoterTree) -> int:
    if t.size == 0:
        return 0
    return max(len(nbrs) for nbrs in t.adjacency())


# ---------------------------------------------------------------------------
# Brute-force oracle: enumerate every labeled tree via Prüfer sequences.

_BRUTEFORCE_LIMIT = 8
_tree_cache: dict[int, np.ndarray] = {}


def prufer_to_edges(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Decode a Prüfer sequence over nodes 0..n-1 into an edge list."""
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    for v in seq:
        u = heapq.heappop(heap)
        edges.append((min(u, v), max(u, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(heap, v)
    u = heapq.heappop(heap)
    w = heapq.heappop(heap)
    edges.append((min(u, w), max(u, w)))
    return edges


def _all_labeled_trees(n: int) -> np.ndarray:
    """(n^(n-2), n-1, 2) array of edge lists, in Prüfer sequence order."""
    if n in _tree_cache:
        return _tree_cache[n]
    if n == 1:
        trees = np.zeros((1, 0, 2), dtype=np.int8)
    elif n == 2:
        trees = np.array([[[0, 1]]], dtype=np.int8)
    else:
        rows = [
            prufer_to_edges(seq, n)
            for seq in itertools.product(range(n), repeat=n - 2)
        ]
        trees = np.array(rows, dtype=np.int8)
    _tree_cache[n] = trees
    return trees


def bruteforce_sc_tree(p: Profile) -> VoterTree:
    """First labeled tree (Prüfer order) passing the single crossing check.

    Independent test oracle; refuses n > 8. Raises NoTreeError("exhausted")
    when no labeled tree works.
    """
    n = p.n
    if not (1 <= n <= _BRUTEFORCE_LIMIT):
        raise ValueError(f"brute force limited to 1..{_BRUTEFORCE_LIMIT} voters")
    if n == 1:
        return VoterTree(p.voters, ())
    sigs = np.array([q.pair_signature() for q in p.preferences()], dtype=np.uint64)
    trees = _all_labeled_trees(n)
    d = sigs[trees[:, :, 0]] ^ sigs[trees[:, :, 1]]  # (T, n-1) disagreement masks
    counts = np.bitwise_count(d).sum(axis=1)
    union = np.bitwise_or.reduce(d, axis=1)
    ok = counts == np.bitwise_count(union)  # disjoint <=> no pair crosses twice
    if not ok.any():
        raise NoTreeError("exhausted")
    first = int(np.argmax(ok))
    edges = tuple((int(a), int(b)) for a, b in trees[first])
    return VoterTree(p.voters, edges)


def iter_paths_as_sequences(t: VoterTree) -> Iterable[VoterSequence]:
    """Voter sequences of all node-to-node paths (for cross-checks)."""
    for a, b in itertools.combinations(range(t.size), 2):
        yield VoterSequence(tuple(t.nodes[i][0] for i in t.path(a, b)))
