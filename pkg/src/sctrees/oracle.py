"""Comparison oracles: the counting/memoizing wrapper that defines measured
query complexity, the profile-backed simulator, the adversarial star oracle
for the elicitation lower bound, and the replay-based session oracle used by
the interactive service."""

from __future__ import annotations

from typing import Protocol

from .prefs import Preference, Profile
from .sctree import VoterTree, verify_single_crossing_tree


class QueryOracle(Protocol):
    def answer(self, voter: int, x: int, y: int) -> bool:
        """True iff the voter prefers candidate x over candidate y."""
        ...


class SimulatedOracle:
    """Answers from a fixed hidden profile."""

    def __init__(self, profile: Profile):
        self._prefs = {v: q for v, q in profile.voters}
        self.m = profile.m

    def answer(self, voter: int, x: int, y: int) -> bool:
        if voter not in self._prefs:
            raise ValueError(f"unknown voter {voter}")
        return self._prefs[voter].prefers(x, y)


class CountingMemoOracle:
    """Memoizes per (voter, unordered pair); the memo size is the measured
    query count. Mirrored and repeated queries never increment it."""

    def __init__(self, inner: QueryOracle):
        self.inner = inner
        self._memo: dict[tuple[int, int, int], bool] = {}

    def answer(self, voter: int, x: int, y: int) -> bool:
        if x == y:
            raise ValueError("cannot compare a candidate with itself")
        lo, hi = (x, y) if x < y else (y, x)
        key = (voter, lo, hi)
        if key not in self._memo:
            self._memo[key] = self.inner.answer(voter, lo, hi)
        lo_preferred = self._memo[key]
        return lo_preferred if x == lo else not lo_preferred

    @property
    def query_count(self) -> int:
        return len(self._memo)

    def queried(self, voter: int, x: int, y: int) -> bool:
        lo, hi = (x, y) if x < y else (y, x)
        return (voter, lo, hi) in self._memo


def star_tree(profile: Profile, center: int = 0) -> VoterTree:
    """Star on the profile's voters, centered at the given node index."""
    n = profile.n
    edges = tuple(
        (min(center, i), max(center, i)) for i in range(n) if i != center
    )
    return VoterTree(profile.voters, edges)


class AdversarialStarOracle:
    """Lower-bound adversary on a star of n voters (voter 0 is the center).

    Requires an even number of candidates. All answers are consistent with
    the baseline order c0 > c1 > ... > c(m-1). At finalize time, any leaf
    never compared on some consecutive pair {c2k, c2k+1} gets that pair
    flipped whenever the claimed profile kept the baseline order on it,
    so skipping any such comparison is fatal for the elicitor. The
    committed profile stays single crossing with respect to the star.
    """

    def __init__(self, m: int, n: int):
        if m % 2 != 0:
            raise ValueError("adversarial star construction requires even m")
        if n < 2:
            raise ValueError("need at least a center and one leaf")
        self.m = m
        self.n = n
        self.baseline = Preference(tuple(range(m)))
        self._asked: set[tuple[int, int, int]] = set()
        self._finalized: Profile | None = None

    def answer(self, voter: int, x: int, y: int) -> bool:
        if self._finalized is not None:
            raise RuntimeError("oracle already finalized")
        if not (0 <= voter < self.n):
            raise ValueError(f"unknown voter {voter}")
        if x == y or not (0 <= x < self.m and 0 <= y < self.m):
            raise ValueError(f"invalid pair ({x}, {y})")
        self._asked.add((voter, min(x, y), max(x, y)))
        return x < y

    def finalize(self, claimed: Profile) -> tuple[Profile, bool]:
        """Commit the hidden profile and report whether the claim is wrong."""
        if sorted(claimed.voter_ids()) != list(range(self.n)) or claimed.m != self.m:
            raise ValueError("claimed profile must cover voters 0..n-1")
        used_pairs: set[int] = set()
        prefs: list[Preference] = [self.baseline]
        for voter in range(1, self.n):
            order = list(range(self.m))
            claimed_pref = claimed.preference_of(voter)
            for k in range(0, self.m, 2):
                a, b = k, k + 1
                if (voter, a, b) in self._asked or k in used_pairs:
                    continue
                if claimed_pref.prefers(a, b):
                    order[a], order[b] = order[b], order[a]
                    used_pairs.add(k)
            prefs.append(Preference(tuple(order)))
        actual = Profile.from_preferences(prefs)
        assert verify_single_crossing_tree(actual, star_tree(actual))
        for voter, lo, hi in self._asked:
            # committed profile must honor every answer already given
            assert actual.preference_of(voter).prefers(lo, hi) == (lo < hi)
        fooled = any(
            claimed.preference_of(v) != actual.preference_of(v)
            for v in range(self.n)
        )
        self._finalized = actual
        return actual, fooled


class PendingQuery(Exception):
    """Raised by SessionOracle when an answer must come from outside."""

    def __init__(self, voter: int, x: int, y: int):
        self.voter = voter
        self.x = x
        self.y = y
        super().__init__(f"awaiting answer: does voter {voter} prefer {x} over {y}?")


class SessionOracle:
    """Replays recorded answers in ask order; raises PendingQuery beyond them.

    Bridges an asynchronous responder to the synchronous answer contract:
    the elicitation engine is deterministic, so re-running it against the
    recorded answer log reproduces the exact same query sequence, and the
    first unanswered query is the session's single outstanding question.
    """

    def __init__(self, answers: list[bool]):
        self._answers = answers
        self._next = 0

    def answer(self, voter: int, x: int, y: int) -> bool:
        if self._next < len(self._answers):
            value = self._answers[self._next]
            self._next += 1
            return value
        raise PendingQuery(voter, x, y)
