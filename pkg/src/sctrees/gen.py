"""Instance generation for tests and benchmarks.

Single-crossing-tree profiles are grown edge by edge: each new node applies
one adjacent transposition to its parent's order, and every transposed
candidate pair is used at most once across the whole tree. Each pair's
disagreement split then crosses exactly the edge that flipped it, so the
construction is single crossing by design (and verified anyway).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .prefs import Preference, Profile
from .recognize import recognize_weakly_sc
from .sctree import VoterTree, verify_single_crossing_tree


class GenerationError(Exception):
    pass


@dataclass(frozen=True)
class GenSpec:
    m: int
    node_count: int
    style: str = "random"  # path | star | random
    duplication: int = 1
    subsample: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise ValueError("node_count must be at least 1")
        cap = self.m * (self.m - 1) // 2 + 1
        if self.node_count > cap:
            raise ValueError(f"node_count exceeds the m(m-1)/2 + 1 cap ({cap})")
        if self.style not in ("path", "star", "random"):
            raise ValueError(f"unknown style {self.style!r}")
        if self.duplication < 1 or not (0.0 < self.subsample <= 1.0):
            raise ValueError("bad duplication or subsample fraction")


def gen_sc_tree_profile(spec: GenSpec) -> tuple[Profile, VoterTree]:
    """Grow a single crossing tree profile of distinct preferences."""
    rng = random.Random(spec.seed)
    orders: list[tuple[int, ...]] = [tuple(range(spec.m))]
    edges: list[tuple[int, int]] = []
    used_pairs: set[tuple[int, int]] = set()
    order_set = {orders[0]}
    while len(orders) < spec.node_count:
        if spec.style == "path":
            sites = [len(orders) - 1]
        elif spec.style == "star":
            sites = [0]
        else:
            sites = list(range(len(orders)))
            rng.shuffle(sites)
        grown = False
        for site in sites:
            parent = orders[site]
            options = []
            for pos in range(spec.m - 1):
                a, b = parent[pos], parent[pos + 1]
                pair = (min(a, b), max(a, b))
                child = list(parent)
                child[pos], child[pos + 1] = child[pos + 1], child[pos]
                if pair not in used_pairs and tuple(child) not in order_set:
                    options.append((pair, tuple(child)))
            if not options:
                continue
            pair, child = rng.choice(options)
            used_pairs.add(pair)
            edges.append((site, len(orders)))
            orders.append(child)
            order_set.add(child)
            grown = True
            break
        if not grown:
            raise GenerationError(
                "no unused adjacent transposition available at any growth site"
            )
    profile = Profile.from_preferences([Preference(o) for o in orders])
    tree = VoterTree(profile.voters, tuple(edges))
    assert verify_single_crossing_tree(profile, tree)
    return profile, tree


def subsample_weakly_sc(p: Profile, t: VoterTree, spec: GenSpec) -> Profile:
    """Keep a random subset of the tree's preferences and duplicate them.

    The output is weakly single crossing by construction: it is a
    sub-multiset of a profile that is single crossing on t.
    """
    assert verify_single_crossing_tree(p, t)
    rng = random.Random(spec.seed)
    n = p.n
    keep_count = max(1, round(spec.subsample * n))
    kept = sorted(rng.sample(range(n), keep_count))
    prefs: list[Preference] = []
    for i in kept:
        copies = rng.randint(1, spec.duplication)
        prefs.extend([p.voters[i][1]] * copies)
    rng.shuffle(prefs)
    return Profile.from_preferences(prefs)


def sample_instance(
    m: int,
    n: int,
    duplication: int = 1,
    seed: int = 0,
    style: str = "random",
) -> tuple[Profile, Profile, VoterTree]:
    """Deterministic weakly-SC instance with exactly n voters.

    Growth near the m(m-1)/2 + 1 cap can dead-end, so this retries fresh
    derived seeds until a tree materializes. Returns (profile, generating
    distinct profile, generating tree).
    """
    rng = random.Random(seed)
    cap = m * (m - 1) // 2 + 1
    while True:
        spec = GenSpec(
            m=m,
            node_count=rng.randint(1, min(cap, max(1, n))),
            style=style,
            duplication=duplication,
            subsample=1.0,
            seed=rng.randrange(2**32),
        )
        try:
            base, tree = gen_sc_tree_profile(spec)
        except GenerationError:
            continue
        sampled = subsample_weakly_sc(base, tree, spec)
        prefs = sampled.preferences()
        while len(prefs) < n:
            prefs.append(prefs[rng.randrange(len(prefs))])
        return Profile.from_preferences(prefs[:n]), base, tree


def gen_negative(kind: str, m: int, n: int, seed: int = 0) -> Profile:
    """Profiles outside the domain, for recognizer tests.

    condorcet-triple embeds the 3-cycle patterns on three candidates with
    identical padding; random-noise draws uniform orders and, at small
    sizes, resamples any draw the recognizer accidentally accepts.
    """
    rng = random.Random(seed)
    if kind == "condorcet-triple":
        if m < 3:
            raise ValueError("condorcet-triple needs m >= 3")
        if n < 3:
            raise ValueError("condorcet-triple needs n >= 3")
        a, b, c = rng.sample(range(m), 3)
        rest = [x for x in range(m) if x not in (a, b, c)]
        patterns = [(a, b, c), (b, c, a), (c, a, b)]
        prefs = [Preference(tuple(list(pat) + rest)) for pat in patterns]
        while len(prefs) < n:
            prefs.append(prefs[rng.randrange(3)])
        return Profile.from_preferences(prefs)
    if kind == "random-noise":
        while True:
            prefs = []
            for _ in range(n):
                order = list(range(m))
                rng.shuffle(order)
                prefs.append(Preference(tuple(order)))
            profile = Profile.from_preferences(prefs)
            if m <= 4 and n <= 6:
                if recognize_weakly_sc(profile).verdict:
                    continue  # resample accidental members of the domain
            return profile
    raise ValueError(f"unknown negative kind {kind!r}")
