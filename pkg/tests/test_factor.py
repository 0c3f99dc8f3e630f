import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphafactor.factor import (
    HOLDS,
    NO,
    UNKNOWN,
    VIOLATED,
    YES,
    FactorVerdict,
    find_even_factor,
    naive_even_factor,
    verify_even_factor,
    yan_kano_check,
)
from alphafactor.graphs import (
    Graph,
    SizeLimitError,
    enumerate_labeled_graphs,
    random_graph,
)
from alphafactor.theorem import ExtremalSpec, build_extremal


def extremal(n, delta):
    return build_extremal(ExtremalSpec(n, delta))


def extremal_8_2_witness():
    # the two join vertices form a triangle with the lone degree-2 vertex,
    # and the K5 block contributes a Hamilton cycle
    triangle = [(0, 7), (1, 7), (0, 1)]
    ham = [(2, 3), (3, 4), (4, 5), (5, 6), (2, 6)]
    return triangle + ham


class TestVerifyEvenFactor:
    def test_cycle_is_its_own_factor(self):
        g = Graph.cycle(6)
        assert verify_even_factor(g, g.edges())

    def test_uncovered_vertex_fails(self):
        assert not verify_even_factor(Graph.complete(4), [(0, 1), (1, 2), (0, 2)])

    def test_extremal_witness(self):
        assert verify_even_factor(extremal(8, 2), extremal_8_2_witness())

    def test_odd_degree_fails(self):
        g = Graph.complete(4)
        assert not verify_even_factor(g, g.edges())  # K4 itself is 3-regular

    def test_foreign_edge_raises(self):
        with pytest.raises(ValueError, match="not in the host graph"):
            verify_even_factor(Graph.path(3), [(0, 2)])

    def test_duplicate_edge_raises(self):
        g = Graph.cycle(3)
        with pytest.raises(ValueError, match="duplicate"):
            verify_even_factor(g, [(0, 1), (1, 0), (1, 2), (0, 2)])


class TestFindEvenFactor:
    def test_cycle(self):
        verdict = find_even_factor(Graph.cycle(6))
        assert verdict.exists == YES
        assert verdict.witness == frozenset(Graph.cycle(6).edges())

    def test_degree_one_vertex_means_no(self):
        assert find_even_factor(Graph.path(4)).exists == NO

    def test_extremal_8_2_found(self):
        g = extremal(8, 2)
        assert g.m - g.n + 1 == 16
        verdict = find_even_factor(g)
        assert verdict.exists == YES
        assert verify_even_factor(g, verdict.witness)

    def test_budget_overrun_is_unknown(self):
        g = extremal(10, 2)
        assert g.m - g.n + 1 == 29
        assert find_even_factor(g, dim_budget=24).exists == UNKNOWN
        assert find_even_factor(g, dim_budget=29).exists == YES

    def test_disconnected_requires_every_component(self):
        two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert find_even_factor(two_triangles).exists == YES
        triangle_plus_edge = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
        assert find_even_factor(triangle_plus_edge).exists == NO
        with_isolated = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
        assert find_even_factor(with_isolated).exists == NO

    def test_empty_graph(self):
        assert find_even_factor(Graph.empty(0)).exists == YES

    def test_cancellation(self):
        g = extremal(8, 2)  # dimension 16: plenty of steps to poll
        verdict = find_even_factor(g, should_stop=lambda: True)
        # either cancelled (unknown) or found before the first poll stride
        assert verdict.exists in (YES, UNKNOWN)
        calls = []

        def stop():
            calls.append(1)
            return True

        find_even_factor(extremal(8, 2).remove_edges([(0, 1)]), should_stop=stop)


class TestNaiveEvenFactor:
    def test_k4(self):
        verdict = naive_even_factor(Graph.complete(4))
        assert verdict.exists == YES
        assert verify_even_factor(Graph.complete(4), verdict.witness)

    def test_path(self):
        assert naive_even_factor(Graph.path(4)).exists == NO

    def test_two_triangles(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        verdict = naive_even_factor(g)
        assert verdict.exists == YES
        assert verdict.witness == frozenset(g.edges())

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            naive_even_factor(Graph.complete(7))  # 21 edges

    def test_witness_validity(self):
        rng = random.Random(13)
        for trial in range(30):
            g = random_graph(rng.randint(1, 6), rng.random(), seed=trial)
            verdict = naive_even_factor(g)
            if verdict.exists == YES:
                assert verify_even_factor(g, verdict.witness)


class TestOracleEquivalence:
    def test_all_connected_up_to_5(self):
        for n in range(1, 6):
            for g in enumerate_labeled_graphs(n, lambda g: g.is_connected()):
                assert find_even_factor(g).exists == naive_even_factor(g).exists

    def test_random_graphs_with_small_edge_counts(self):
        rng = random.Random(55)
        checked = 0
        trial = 0
        while checked < 60:
            g = random_graph(rng.randint(2, 8), rng.uniform(0.2, 0.7), seed=7000 + trial)
            trial += 1
            if g.m > 16:
                continue
            checked += 1
            assert find_even_factor(g).exists == naive_even_factor(g).exists


class TestYanKano:
    def test_complete_graph_holds(self):
        assert yan_kano_check(Graph.complete(6)).status == HOLDS

    def test_extremal_8_2_violated_at_join_pair(self):
        result = yan_kano_check(extremal(8, 2))
        assert result.status == VIOLATED
        assert result.violating_set == (0, 1)

    def test_c6_antipodal_pair_fine_but_scan_violates(self):
        # antipodal deletion leaves two even paths, but S={0,2} leaves a
        # singleton and a 3-path (two odd components), so the full scan
        # reports a violation; C6 still has an even factor (itself) -- the
        # condition is sufficient, not necessary
        g = Graph.cycle(6)
        from alphafactor.graphs import odd_components

        assert odd_components(g, {0, 3}) == 0
        result = yan_kano_check(g)
        assert result.status == VIOLATED
        assert result.violating_set == (0, 2)
        assert find_even_factor(g).exists == YES

    def test_budget(self):
        assert yan_kano_check(Graph.complete(6), subset_budget=5).status == UNKNOWN

    def test_violating_set_is_lexicographically_first(self):
        rng = random.Random(71)
        for trial in range(20):
            g = random_graph(rng.randint(3, 7), rng.uniform(0.2, 0.6), seed=trial)
            result = yan_kano_check(g)
            if result.status != VIOLATED:
                continue
            from alphafactor.graphs import odd_components

            first = None
            for size in range(2, g.n + 1):
                for subset in combinations(range(g.n), size):
                    if odd_components(g, subset) >= size:
                        if first is None or subset < first:
                            first = subset
            assert result.violating_set == first


class TestFactorVerdictContract:
    def test_witness_required_for_witness_methods(self):
        with pytest.raises(ValueError, match="witness"):
            FactorVerdict(exists=YES, method="cycle-space")
        FactorVerdict(exists=YES, method="yan-kano-implied")  # witness-free is fine

    @given(st.integers(min_value=0, max_value=2**10 - 1), st.integers(min_value=0, max_value=2**10 - 1))
    @settings(max_examples=40, deadline=None)
    def test_parity_closure_of_cycle_space(self, mask_a, mask_b):
        # symmetric differences of all-even edge sets stay all-even
        g = extremal(8, 2)
        from alphafactor.factor import _fundamental_cycles

        edges = g.edges()
        index = {e: i for i, e in enumerate(edges)}
        cycles = _fundamental_cycles(g, (1 << g.n) - 1, index)

        def member(mask):
            chosen = set()
            for k, cyc in enumerate(cycles[:10]):
                if mask >> k & 1:
                    chosen ^= {eid for eid, _, _ in cyc}
            return chosen

        sym_diff = member(mask_a) ^ member(mask_b)
        deg = [0] * g.n
        for eid in sym_diff:
            u, v = edges[eid]
            deg[u] += 1
            deg[v] += 1
        assert all(d % 2 == 0 for d in deg)
