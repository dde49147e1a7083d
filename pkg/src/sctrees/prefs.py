"""Core value types: preferences, profiles, voter sequences, majority relations.

Candidates are integer indices 0..m-1 everywhere; display names live only at
the I/O boundary. All types here are immutable after construction and all
operations are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence


def pair_index(x: int, y: int, m: int) -> int:
    """Index of the unordered pair {x, y} in lexicographic pair order."""
    if x > y:
        x, y = y, x
    return x * (2 * m - x - 1) // 2 + (y - x - 1)


def all_pairs(m: int) -> Iterable[tuple[int, int]]:
    """Unordered candidate pairs (x, y), x < y, in lexicographic order."""
    return itertools.combinations(range(m), 2)


@dataclass(frozen=True)
class Preference:
    """A strict linear order over m candidates, most preferred first."""

    order: tuple[int, ...]
    rank: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        m = len(self.order)
        if m < 1:
            raise ValueError("preference must rank at least one candidate")
        if sorted(self.order) != list(range(m)):
            raise ValueError(f"order {self.order!r} is not a permutation of 0..{m - 1}")
        rank = [0] * m
        for pos, c in enumerate(self.order):
            rank[c] = pos
        object.__setattr__(self, "rank", tuple(rank))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Preference":
        return cls(tuple(order))

    @property
    def m(self) -> int:
        return len(self.order)

    def prefers(self, x: int, y: int) -> bool:
        """True iff this preference ranks x above y."""
        m = self.m
        if x == y or not (0 <= x < m) or not (0 <= y < m):
            raise ValueError(f"invalid candidate pair ({x}, {y}) for m={m}")
        return self.rank[x] < self.rank[y]

    def pair_signature(self) -> int:
        """Bitmask over unordered pairs: bit for {x, y} (x < y) set iff x is above y.

        Two preferences over the same m are equal iff their signatures are
        equal; XOR of two signatures marks exactly their disagreement pairs.
        """
        sig = 0
        rank = self.rank
        for bit, (x, y) in enumerate(all_pairs(self.m)):
            if rank[x] < rank[y]:
                sig |= 1 << bit
        return sig


def signature_to_preference(sig: int, m: int) -> Preference | None:
    """Rebuild a preference from a pair-signature tournament, or None.

    A tournament over m candidates is a linear order iff its win counts are
    a permutation of 0..m-1; in that case sorting by wins descending gives
    the order.
    """
    wins = [0] * m
    for bit, (x, y) in enumerate(all_pairs(m)):
        if sig & (1 << bit):
            wins[x] += 1
        else:
            wins[y] += 1
    if sorted(wins) != list(range(m)):
        return None
    order = sorted(range(m), key=lambda c: -wins[c])
    return Preference(tuple(order))


def prefers(p: Preference, x: int, y: int) -> bool:
    return p.prefers(x, y)


def disagreement_pairs(p: Preference, q: Preference) -> set[tuple[int, int]]:
    """Unordered candidate pairs (x, y), x < y, that p and q order differently."""
    if p.m != q.m:
        raise ValueError("preferences are over different candidate sets")
    return {
        (x, y)
        for x, y in all_pairs(p.m)
        if (p.rank[x] < p.rank[y]) != (q.rank[x] < q.rank[y])
    }


@dataclass(frozen=True)
class Profile:
    """An ordered multiset of preferences indexed by distinct voter ids."""

    voters: tuple[tuple[int, Preference], ...]
    m: int

    def __post_init__(self) -> None:
        ids = [v for v, _ in self.voters]
        if len(set(ids)) != len(ids):
            raise ValueError("voter ids must be distinct")
        for _, p in self.voters:
            if p.m != self.m:
                raise ValueError("all preferences must share the candidate count")

    @classmethod
    def from_preferences(
        cls, prefs: Sequence[Preference], ids: Sequence[int] | None = None
    ) -> "Profile":
        prefs = list(prefs)
        if not prefs:
            raise ValueError("profile must contain at least one voter")
        if ids is None:
            ids = range(len(prefs))
        return cls(tuple(zip(ids, prefs)), prefs[0].m)

    @property
    def n(self) -> int:
        return len(self.voters)

    def preferences(self) -> list[Preference]:
        return [p for _, p in self.voters]

    def voter_ids(self) -> list[int]:
        return [v for v, _ in self.voters]

    def preference_of(self, voter_id: int) -> Preference:
        for v, p in self.voters:
            if v == voter_id:
                return p
        raise KeyError(f"unknown voter id {voter_id}")

    def same_multiset(self, other: "Profile") -> bool:
        """Equality as a multiset of preferences, ignoring voter ids and order."""
        return self.m == other.m and sorted(
            p.order for p in self.preferences()
        ) == sorted(p.order for p in other.preferences())

    def preference_set(self) -> set[tuple[int, ...]]:
        return {p.order for p in self.preferences()}


@dataclass(frozen=True)
class VoterSequence:
    """A permutation of a profile's voter ids."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order):
            raise ValueError("voter sequence must not repeat voters")


@dataclass(frozen=True)
class MajorityRelation:
    """Pairwise majority outcomes: comp[x][y] is +1 (x over y), -1, or 0 (tie)."""

    comp: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.comp)

    def wins(self, x: int, y: int) -> int:
        return self.comp[x][y]


def majority_relation(prefs: Sequence[Preference]) -> MajorityRelation:
    """Majority relation of a sequence of preferences (duplicates count)."""
    if not prefs:
        raise ValueError("majority relation needs at least one preference")
    m = prefs[0].m
    if any(p.m != m for p in prefs):
        raise ValueError("all preferences must share the candidate count")
    comp = [[0] * m for _ in range(m)]
    half = len(prefs) / 2
    for x, y in all_pairs(m):
        for_x = sum(1 for p in prefs if p.rank[x] < p.rank[y])
        if for_x > half:
            comp[x][y], comp[y][x] = 1, -1
        elif len(prefs) - for_x > half:
            comp[x][y], comp[y][x] = -1, 1
    return MajorityRelation(tuple(tuple(row) for row in comp))


def as_linear_order(r: MajorityRelation) -> Preference | None:
    """The unique preference matching r, or None when r is not a linear order."""
    m = r.m
    wins = [0] * m
    for x, y in all_pairs(m):
        c = r.comp[x][y]
        if c == 0:
            return None
        wins[x if c > 0 else y] += 1
    if sorted(wins) != list(range(m)):
        return None
    return Preference(tuple(sorted(range(m), key=lambda c: -wins[c])))


def is_single_crossing_sequence(p: Profile, s: VoterSequence) -> bool:
    """True iff each candidate pair's supporters form a contiguous block of s."""
    if sorted(s.order) != sorted(p.voter_ids()):
        raise ValueError("sequence must be a permutation of the profile's voters")
    prefs = [p.preference_of(v) for v in s.order]
    for x, y in all_pairs(p.m):
        stances = [q.rank[x] < q.rank[y] for q in prefs]
        # contiguous blocks <=> at most one change of stance along the sequence
        changes = sum(1 for a, b in zip(stances, stances[1:]) if a != b)
        if changes > 1:
            return False
    return True


def dedupe(p: Profile) -> tuple[Profile, dict[int, list[int]]]:
    """Drop duplicate preferences, keeping first-occurrence order.

    Returns the deduplicated profile (keeping each first voter's id) and a
    map from distinct index to the original voter ids sharing that
    preference.
    """
    seen: dict[tuple[int, ...], int] = {}
    distinct: list[tuple[int, Preference]] = []
    groups: dict[int, list[int]] = {}
    for voter_id, pref in p.voters:
        key = pref.order
        if key in seen:
            groups[seen[key]].append(voter_id)
        else:
            idx = len(distinct)
            seen[key] = idx
            distinct.append((voter_id, pref))
            groups[idx] = [voter_id]
    return Profile(tuple(distinct), p.m), groups
