from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sctrees import (
    AdversarialStarOracle,
    CountingMemoOracle,
    PendingQuery,
    Preference,
    Profile,
    SessionOracle,
    SimulatedOracle,
    star_tree,
    verify_single_crossing_tree,
)

from conftest import profile


class TestSimulatedOracle:
    def test_answers_from_profile(self):
        o = SimulatedOracle(profile("abc"))
        assert o.answer(0, 0, 1)
        assert not o.answer(0, 1, 0)

    def test_unknown_voter(self):
        o = SimulatedOracle(profile("abc"))
        with pytest.raises(ValueError):
            o.answer(7, 0, 1)


class TestCountingMemoOracle:
    def test_fresh_count_zero(self):
        o = CountingMemoOracle(SimulatedOracle(profile("abc")))
        assert o.query_count == 0

    def test_repeat_counts_once(self):
        o = CountingMemoOracle(SimulatedOracle(profile("abc")))
        o.answer(0, 0, 1)
        o.answer(0, 0, 1)
        assert o.query_count == 1

    def test_mirrored_and_per_voter_counting(self):
        p = profile("abc", "bac")
        o = CountingMemoOracle(SimulatedOracle(p))
        o.answer(0, 0, 1)
        o.answer(0, 1, 0)
        o.answer(1, 0, 1)
        assert o.query_count == 2

    def test_same_candidate_rejected(self):
        o = CountingMemoOracle(SimulatedOracle(profile("abc")))
        with pytest.raises(ValueError):
            o.answer(0, 1, 1)

    @given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 3), st.integers(0, 3)),
                    max_size=40))
    def test_count_equals_distinct_queries_and_answers_consistent(self, queries):
        p = profile("abcd", "dcba", "badc")
        inner = SimulatedOracle(p)
        o = CountingMemoOracle(inner)
        seen = set()
        for voter, x, y in queries:
            if x == y:
                continue
            first = o.answer(voter, x, y)
            assert first == inner.answer(voter, x, y)
            assert o.answer(voter, x, y) == first
            seen.add((voter, min(x, y), max(x, y)))
            assert o.query_count == len(seen)


class TestAdversarialStarOracle:
    def test_odd_m_refused(self):
        with pytest.raises(ValueError):
            AdversarialStarOracle(3, 5)

    def test_baseline_answers(self):
        adv = AdversarialStarOracle(4, 3)
        assert adv.answer(1, 0, 1)
        assert not adv.answer(2, 3, 2)

    def test_fully_queried_elicitor_is_safe(self):
        m, n = 4, 3
        adv = AdversarialStarOracle(m, n)
        orders = []
        for voter in range(n):
            order = sorted(range(m), key=lambda c: [adv.answer(voter, c, d)
                                                    for d in range(m) if d != c].count(True),
                           reverse=True)
            orders.append(Preference(tuple(order)))
        claimed = Profile.from_preferences(orders)
        actual, fooled = adv.finalize(claimed)
        assert not fooled
        assert actual.same_multiset(claimed)

    def test_skipped_pair_is_fatal(self):
        m, n = 4, 4
        adv = AdversarialStarOracle(m, n)
        for voter in range(n):
            for x in range(m):
                for y in range(x + 1, m):
                    if voter == 3 and (x, y) == (0, 1):
                        continue  # leaf 3 never compared on {c0, c1}
                    adv.answer(voter, x, y)
        baseline = Preference(tuple(range(m)))
        claimed = Profile.from_preferences([baseline] * n)
        actual, fooled = adv.finalize(claimed)
        assert fooled
        assert actual.preference_of(3).order == (1, 0, 2, 3)
        for voter in range(3):
            assert actual.preference_of(voter).order == tuple(range(m))

    def test_smallest_instance(self):
        adv = AdversarialStarOracle(2, 2)
        baseline = Preference((0, 1))
        claimed = Profile.from_preferences([baseline, baseline])
        actual, fooled = adv.finalize(claimed)
        assert fooled
        assert actual.preference_of(1).order == (1, 0)

    def test_committed_profile_always_star_single_crossing(self):
        rng = random.Random(9)
        for _ in range(30):
            m = rng.choice([2, 4, 6])
            n = rng.randint(2, 6)
            adv = AdversarialStarOracle(m, n)
            for _ in range(rng.randint(0, 3 * m)):
                v = rng.randrange(n)
                x, y = rng.sample(range(m), 2)
                adv.answer(v, x, y)
            claimed_prefs = []
            for _ in range(n):
                order = list(range(m))
                rng.shuffle(order)
                claimed_prefs.append(Preference(tuple(order)))
            actual, _ = adv.finalize(Profile.from_preferences(claimed_prefs))
            assert verify_single_crossing_tree(actual, star_tree(actual))

    def test_no_answers_after_finalize(self):
        adv = AdversarialStarOracle(2, 2)
        adv.finalize(Profile.from_preferences([Preference((0, 1))] * 2))
        with pytest.raises(RuntimeError):
            adv.answer(0, 0, 1)


class TestSessionOracle:
    def test_replays_then_raises(self):
        o = SessionOracle([True, False])
        assert o.answer(0, 0, 1) is True
        assert o.answer(0, 1, 2) is False
        with pytest.raises(PendingQuery) as exc:
            o.answer(1, 0, 2)
        assert (exc.value.voter, exc.value.x, exc.value.y) == (1, 0, 2)
