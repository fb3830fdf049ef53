import random
from collections import Counter

import pytest

import nicheck as nc
from conftest import corpus_params, random_trace


class TestTraceKey:
    def test_purge_key_identifies_purge_equal_traces(self, fig5):
        assert nc.trace_key(fig5, "p", "L", ("h", "d", "l")) == \
            nc.trace_key(fig5, "p", "L", ("d", "l"))

    def test_tree_key_of_empty_traces(self, fig5):
        assert nc.trace_key(fig5, "ta", "L", ()) == nc.trace_key(fig5, "ta", "L", ())

    def test_fig5_to_key_separates_on_downgrader_view(self, fig5):
        assert nc.trace_key(fig5, "to", "L", ("h", "d", "l")) != \
            nc.trace_key(fig5, "to", "L", ("d", "l"))

    def test_key_equality_matches_defining_equivalence(self):
        rng = random.Random(61)
        for params in corpus_params(40, seed=61):
            s = nc.gen_random_system(params)
            u = rng.choice(s.policy.domains)
            a1, a2 = random_trace(rng, s, 5), random_trace(rng, s, 5)
            assert (nc.trace_key(s, "p", u, a1) == nc.trace_key(s, "p", u, a2)) == \
                (nc.purge(s, u, a1) == nc.purge(s, u, a2))
            assert (nc.trace_key(s, "ip", u, a1) == nc.trace_key(s, "ip", u, a2)) == \
                (nc.ipurge(s, u, a1) == nc.ipurge(s, u, a2))
            assert (nc.trace_key(s, "ta", u, a1) == nc.trace_key(s, "ta", u, a2)) == \
                (nc.ta(s, u, a1) is nc.ta(s, u, a2))

    def test_unknown_notion(self, fig5):
        with pytest.raises(nc.InputError):
            nc.trace_key(fig5, "zz", "L", ())


class TestBoundedCheck:
    def test_fig7_observation_transmission_violation(self, fig7):
        out = nc.bounded_check(fig7, "to", 3)
        assert out.insecure and out.domain == "L"
        assert nc.check_witness_pair(fig7, "to", out.domain, out.alpha, out.beta)

    def test_fig8_immediate_transmission_clear_to_depth_6(self, fig8):
        out = nc.bounded_check(fig8, "ito", 6)
        assert not out.insecure and out.depth == 6

    def test_fig8_observation_transmission_violation_small_depth(self, fig8):
        out = nc.bounded_check(fig8, "to", 2)
        assert out.insecure
        assert (out.alpha, out.beta) == (("d",), ("h", "d"))

    def test_reported_pair_is_shortlex_first(self, fig7):
        out = nc.bounded_check(fig7, "to", 5)
        assert (out.alpha, out.beta) == (("d",), ("h", "d"))

    def test_budget_guard(self, fig6):
        with pytest.raises(nc.BudgetError) as err:
            nc.bounded_check(fig6, "p", 12)
        assert err.value.trace_count == sum(4 ** i for i in range(13))

    def test_secure_decidable_notions_have_no_bounded_violations(self):
        for params in corpus_params(25, seed=67):
            s = nc.gen_random_system(params)
            for notion, decide in (("p", nc.decide_p), ("ip", nc.decide_ip),
                                   ("ta", nc.decide_ta)):
                if decide(s).secure:
                    assert not nc.bounded_check(s, notion, 4).insecure

    def test_bounded_violations_are_genuine(self):
        for params in corpus_params(25, seed=71):
            s = nc.gen_random_system(params)
            for notion in nc.NOTIONS:
                out = nc.bounded_check(s, notion, 3)
                if out.insecure:
                    assert nc.check_witness_pair(s, notion, out.domain,
                                                 out.alpha, out.beta)


class TestExactPairChecks:
    def test_fig5_p_insecure(self, fig5):
        v = nc.exact_pair_check_p(fig5)
        assert not v.secure
        assert nc.check_witness_pair(fig5, "p", v.domain, v.alpha, v.beta)

    def test_constant_observation_secure(self):
        s = nc.System(nc.Policy(("A",)), ("s0", "s1"), "s0", {"a": "A"},
                      {("s0", "a"): "s1"})
        assert nc.exact_pair_check_p(s).secure

    def test_fig6_ip_secure(self, fig6):
        assert nc.exact_pair_check_ip(fig6).secure

    def test_direct_leak_ip_insecure(self, direct_leak):
        v = nc.exact_pair_check_ip(direct_leak)
        assert not v.secure
        assert nc.check_witness_pair(direct_leak, "ip", v.domain, v.alpha, v.beta)

    def test_agreement_with_deciders(self):
        for params in corpus_params(80, seed=73):
            s = nc.gen_random_system(params)
            assert nc.exact_pair_check_p(s).secure == nc.decide_p(s).secure
            assert nc.exact_pair_check_ip(s).secure == nc.decide_ip(s).secure


class TestCheckWitnessPair:
    def test_fig5_classic_pair(self, fig5):
        assert nc.check_witness_pair(fig5, "p", "L", ("h", "d", "l"), ("d", "l"))

    def test_identical_traces_never_violate(self, fig5):
        assert not nc.check_witness_pair(fig5, "p", "L", ("h", "d"), ("h", "d"))

    def test_pcp_generated_pair(self, pcp_demo):
        alpha, beta = nc.pcp_witness(nc.DEMO_INSTANCE, nc.DEMO_SOLUTION)
        assert nc.check_witness_pair(pcp_demo, "to", "watcher", alpha, beta)


class TestTreeKeyRefinement:
    def test_tree_keys_refine_flattened_keys(self):
        # Equal observation-transmission trees force equal flattened keys
        # (the spine carries the purged trace, the last transmitted view of
        # every sender recovers its action-terminated view).  The converse
        # fails in general; see the partition criterion in the acceptance
        # suite.
        rng = random.Random(77)
        for params in corpus_params(40, seed=77, max_states=4):
            s = nc.gen_random_system(params)
            u = rng.choice(s.policy.domains)
            buckets = {}
            for _ in range(40):
                alpha = random_trace(rng, s, 5)
                for tree_notion, flat_notion in (("to", "to"), ("ito", "ito")):
                    tree = getattr(nc, tree_notion)(s, u, alpha)
                    flat = nc.trace_key(s, flat_notion, u, alpha)
                    prior = buckets.setdefault((tree_notion, tree), flat)
                    assert prior == flat

    def test_equal_trees_imply_equal_ipurge_multisets(self):
        # Equal maximal-information trees allow reordering but not changes in
        # which actions are retained or how often.
        rng = random.Random(79)
        for params in corpus_params(40, seed=79):
            s = nc.gen_random_system(params)
            u = rng.choice(s.policy.domains)
            classes = {}
            for _ in range(60):
                alpha = random_trace(rng, s, 5)
                classes.setdefault(nc.ta(s, u, alpha), []).append(
                    Counter(nc.ipurge(s, u, alpha))
                )
            for multisets in classes.values():
                assert all(m == multisets[0] for m in multisets)


class TestTwoPartCharacterization:
    def _swap_condition_somewhere(self, s, depth):
        # direct search for a reachable state and a swappable adjacent pair
        # whose order changes some observation
        for q in nc.reachable_states(s):
            for a in s.actions:
                for b in s.actions:
                    stack = [()]
                    while stack:
                        alpha = stack.pop()
                        for u in s.policy.domains:
                            if not nc.swappable(s, u, (a, b) + alpha, 0):
                                continue
                            qa = nc.run(s, q, (a, b) + alpha)
                            qb = nc.run(s, q, (b, a) + alpha)
                            if s.obs(qa, u) != s.obs(qb, u):
                                return True
                        if len(alpha) < depth:
                            stack.extend((alpha + (c,)) for c in s.actions)
        return False

    def test_on_ip_secure_systems_swap_condition_decides_ta(self):
        # A violating suffix never needs more steps than the closure performs
        # merges, so searching up to |S| steps is complete for these sizes.
        checked = 0
        for params in corpus_params(120, seed=83, max_states=4, max_actions=3):
            s = nc.gen_random_system(params)
            if not nc.decide_ip(s).secure:
                continue
            checked += 1
            found = self._swap_condition_somewhere(s, depth=len(s.states))
            assert found == (not nc.decide_ta(s).secure)
        assert checked >= 25
