from __future__ import annotations

import itertools

import pytest

from sctrees import (
    ClosureResult,
    CyclicMajorityError,
    Preference,
    Profile,
    as_linear_order,
    dedupe,
    majority_relation,
    satisfies_triad_majority,
    triad_closure,
    verify_minimality,
)

from conftest import all_orders, pref, profile


def brute_triad_check(p: Profile) -> bool:
    """Independent oracle: full majority computation over every 3-multiset."""
    distinct = dedupe(p)[0].preferences()
    members = {q.order for q in distinct}
    for triple in itertools.combinations_with_replacement(distinct, 3):
        maj = as_linear_order(majority_relation(list(triple)))
        if maj is None or maj.order not in members:
            return False
    return True


class TestSatisfiesTriadMajority:
    def test_single_preference(self):
        assert satisfies_triad_majority(profile("abc"))

    def test_condorcet_triple(self, abc_condorcet):
        assert not satisfies_triad_majority(abc_condorcet)

    def test_linear_but_absent(self, star_leaves):
        # brute tallies give majority abcd, which the profile lacks
        assert not satisfies_triad_majority(star_leaves)

    def test_agrees_with_brute_force_exhaustively_m3(self):
        orders = all_orders(3)
        for r in range(1, 5):
            for subset in itertools.combinations(orders, r):
                p = Profile.from_preferences(list(subset))
                assert satisfies_triad_majority(p) == brute_triad_check(p)


class TestTriadClosure:
    def test_singleton(self):
        res = triad_closure(profile("abc"))
        assert res.added == ()
        assert [q.order for q in res.closure.preferences()] == [(0, 1, 2)]

    def test_worked_instance(self, star_leaves):
        res = triad_closure(star_leaves)
        closed = [q.order for q in res.closure.preferences()]
        assert closed == [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3), (1, 0, 2, 3)]
        assert len(res.added) == 1
        added_pref, witness = res.added[0]
        assert added_pref == pref("abcd")
        assert witness == (0, 1, 2)
        assert satisfies_triad_majority(res.closure)
        assert brute_triad_check(res.closure)

    def test_condorcet_aborts_with_witness(self, abc_condorcet):
        with pytest.raises(CyclicMajorityError) as exc:
            triad_closure(abc_condorcet)
        assert exc.value.indices == (0, 1, 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            triad_closure(Profile((), 3))

    def test_idempotent(self, star_leaves):
        first = triad_closure(star_leaves)
        second = triad_closure(first.closure)
        assert second.added == ()
        assert second.closure.preference_set() == first.closure.preference_set()

    def test_order_invariance(self, star_leaves):
        base = triad_closure(star_leaves)
        for perm in itertools.permutations(star_leaves.preferences()):
            res = triad_closure(Profile.from_preferences(list(perm)))
            assert [q.order for q in res.closure.preferences()] == [
                q.order for q in base.closure.preferences()
            ]

    def test_output_satisfies_property_on_random_instances(self):
        from sctrees.gen import sample_instance

        for seed in range(25):
            p, _, _ = sample_instance(m=5, n=8, duplication=2, seed=seed)
            res = triad_closure(p)
            assert satisfies_triad_majority(res.closure)
            assert len(res.closure.preferences()) <= 5 * 4 // 2 + 1

    def test_one_pass_equals_fixpoint_small(self):
        # exhaustive over distinct-preference profiles, m <= 3 sizes <= 4
        # (m=4 sampled below keeps runtime down)
        orders = all_orders(3)
        for r in range(1, 5):
            for subset in itertools.combinations(orders, r):
                p = Profile.from_preferences(list(subset))
                try:
                    once = triad_closure(p)
                except CyclicMajorityError:
                    continue
                again = triad_closure(once.closure)
                assert again.added == ()

    def test_one_pass_equals_fixpoint_m4_sampled(self):
        import random

        rng = random.Random(7)
        orders = all_orders(4)
        for _ in range(200):
            subset = rng.sample(orders, rng.randint(1, 4))
            p = Profile.from_preferences(subset)
            try:
                once = triad_closure(p)
            except CyclicMajorityError:
                continue
            try:
                again = triad_closure(once.closure)
            except CyclicMajorityError:
                continue
            assert again.added == ()


class TestVerifyMinimality:
    def test_no_additions(self):
        p = profile("abc", "bac")
        assert verify_minimality(p, triad_closure(p))

    def test_worked_instance(self, star_leaves):
        assert verify_minimality(star_leaves, triad_closure(star_leaves))

    def test_tampered_result_rejected(self, star_leaves):
        res = triad_closure(star_leaves)
        extra = pref("dcba")
        voters = res.closure.voters + ((99, extra),)
        tampered = ClosureResult(Profile(voters, 4), res.added)
        assert not verify_minimality(star_leaves, tampered)
