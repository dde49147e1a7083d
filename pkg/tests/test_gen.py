from __future__ import annotations

import pytest

from sctrees import (
    build_sc_tree,
    max_degree,
    recognize_weakly_sc,
    verify_single_crossing_tree,
)
from sctrees.gen import (
    GenerationError,
    GenSpec,
    gen_negative,
    gen_sc_tree_profile,
    sample_instance,
    subsample_weakly_sc,
)


class TestGenSpec:
    def test_cap_enforced(self):
        GenSpec(m=4, node_count=7)  # 4*3/2 + 1
        with pytest.raises(ValueError):
            GenSpec(m=4, node_count=8)

    def test_bad_style_and_fractions(self):
        with pytest.raises(ValueError):
            GenSpec(m=3, node_count=2, style="ring")
        with pytest.raises(ValueError):
            GenSpec(m=3, node_count=2, subsample=0.0)
        with pytest.raises(ValueError):
            GenSpec(m=3, node_count=2, duplication=0)


class TestGenSCTreeProfile:
    def test_verified_single_crossing(self):
        # random growth may dead-end on some seeds; every success must verify.
        # a star can only hand out the root's m-1 adjacent transpositions,
        # so it gets a smaller node count.
        for style, count in (("path", 6), ("star", 5), ("random", 6)):
            successes = 0
            for seed in range(10):
                try:
                    p, t = gen_sc_tree_profile(
                        GenSpec(m=5, node_count=count, style=style, seed=seed)
                    )
                except GenerationError:
                    continue
                assert verify_single_crossing_tree(p, t)
                assert len(p.preference_set()) == p.n == count
                successes += 1
            assert successes >= 5

    def test_path_style_is_a_path(self):
        p, t = gen_sc_tree_profile(GenSpec(m=6, node_count=5, style="path", seed=1))
        assert max_degree(t) <= 2
        assert set(t.edges) == {(i, i + 1) for i in range(4)}

    def test_star_style_is_a_star(self):
        p, t = gen_sc_tree_profile(GenSpec(m=6, node_count=5, style="star", seed=1))
        assert set(t.edges) == {(0, i) for i in range(1, 5)}

    def test_star_exhausts_adjacent_pairs(self):
        # the root of a star has only m-1 adjacent transpositions to hand out
        with pytest.raises(Exception) as exc:
            gen_sc_tree_profile(GenSpec(m=3, node_count=4, style="star", seed=0))
        assert "growth site" in str(exc.value)

    def test_matches_independent_builder(self):
        for seed in range(10):
            p, _ = gen_sc_tree_profile(GenSpec(m=5, node_count=7, seed=seed))
            t = build_sc_tree(p)
            assert verify_single_crossing_tree(p, t)

    def test_deterministic(self):
        spec = GenSpec(m=5, node_count=6, seed=42)
        assert gen_sc_tree_profile(spec)[0] == gen_sc_tree_profile(spec)[0]


class TestSubsample:
    def test_output_in_domain(self):
        for seed in range(10):
            spec = GenSpec(m=5, node_count=6, duplication=3, subsample=0.6, seed=seed)
            p, t = gen_sc_tree_profile(spec)
            sub = subsample_weakly_sc(p, t, spec)
            assert sub.preference_set() <= p.preference_set()
            assert recognize_weakly_sc(sub).verdict

    def test_duplication_bound(self):
        spec = GenSpec(m=4, node_count=4, duplication=2, seed=5)
        p, t = gen_sc_tree_profile(spec)
        sub = subsample_weakly_sc(p, t, spec)
        prefs = [q.order for q in sub.preferences()]
        assert all(prefs.count(o) <= 2 for o in set(prefs))


class TestSampleInstance:
    def test_exact_voter_count(self):
        for seed in range(5):
            p, base, tree = sample_instance(m=4, n=11, duplication=3, seed=seed)
            assert p.n == 11
            assert verify_single_crossing_tree(base, tree)
            assert p.preference_set() <= base.preference_set()

    def test_deterministic(self):
        a = sample_instance(m=5, n=9, duplication=2, seed=13)[0]
        b = sample_instance(m=5, n=9, duplication=2, seed=13)[0]
        assert a == b

    def test_always_in_domain(self):
        for seed in range(20):
            p, _, _ = sample_instance(m=6, n=12, duplication=2, seed=seed)
            assert recognize_weakly_sc(p).verdict


class TestGenNegative:
    def test_condorcet_triple_rejected(self):
        for m, n in ((3, 3), (5, 7), (4, 10)):
            p = gen_negative("condorcet-triple", m, n, seed=m + n)
            assert p.n == n and p.m == m
            assert not recognize_weakly_sc(p).verdict

    def test_condorcet_bounds(self):
        with pytest.raises(ValueError):
            gen_negative("condorcet-triple", 2, 5)
        with pytest.raises(ValueError):
            gen_negative("condorcet-triple", 5, 2)

    def test_random_noise_small_sizes_rejected(self):
        for seed in range(10):
            p = gen_negative("random-noise", 4, 5, seed=seed)
            assert not recognize_weakly_sc(p).verdict

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            gen_negative("zigzag", 4, 4)
