import math
import random

import numpy as np
import pytest

from alphafactor.graphs import Graph, random_graph
from alphafactor.spectral import (
    ConvergenceError,
    alpha_matrix,
    full_spectrum,
    quadratic_form_delta,
    spectral_radius,
)

ALPHA_GRID = [0.0, 0.25, 0.5, 0.75, 1.0]


def random_connected(n, p, seed):
    rng = random.Random(seed)
    while True:
        g = random_graph(n, p, seed=rng.randrange(1 << 30))
        if g.is_connected():
            return g


class TestAlphaMatrix:
    def test_alpha_zero_is_adjacency(self):
        g = Graph.cycle(5)
        mat = alpha_matrix(g, 0.0)
        expected = np.zeros((5, 5))
        for u, v in g.edges():
            expected[u, v] = expected[v, u] = 1.0
        assert np.array_equal(mat, expected)

    def test_alpha_half_is_half_signless_laplacian(self):
        g = random_graph(7, 0.6, 3)
        adjacency = alpha_matrix(g, 0.0)
        degree = np.diag([g.degree(v) for v in range(7)])
        assert np.allclose(alpha_matrix(g, 0.5), (degree + adjacency) / 2.0)

    def test_k2_entries(self):
        mat = alpha_matrix(Graph.complete(2), 0.3)
        assert np.allclose(mat, [[0.3, 0.7], [0.7, 0.3]])

    def test_row_sums_are_degrees(self):
        rng = random.Random(4)
        for trial in range(25):
            g = random_graph(rng.randint(1, 15), rng.random(), seed=trial)
            for a in ALPHA_GRID:
                assert np.allclose(alpha_matrix(g, a).sum(axis=1), g.degrees())

    def test_alpha_out_of_range(self):
        with pytest.raises(ValueError):
            alpha_matrix(Graph.complete(2), 1.1)


class TestSpectralRadius:
    def test_complete_graphs(self):
        for n in (2, 5, 9):
            for a in ALPHA_GRID:
                assert spectral_radius(Graph.complete(n), a).radius == pytest.approx(
                    n - 1, abs=1e-9
                )

    def test_cycles_are_two_regular(self):
        for n in (3, 8, 17):
            for a in ALPHA_GRID:
                assert spectral_radius(Graph.cycle(n), a).radius == pytest.approx(
                    2.0, abs=1e-10
                )

    def test_claw_at_alpha_zero(self):
        claw = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        res = spectral_radius(claw, 0.0)
        assert res.radius == pytest.approx(math.sqrt(3.0), abs=1e-9)
        assert res.radius == pytest.approx(
            max(full_spectrum(alpha_matrix(claw, 0.0))), abs=1e-9
        )

    def test_result_contract(self):
        g = random_connected(9, 0.4, 12)
        res = spectral_radius(g, 0.3)
        mat = alpha_matrix(g, 0.3)
        assert np.linalg.norm(mat @ res.perron - res.radius * res.perron) <= 1e-10
        assert res.residual <= 1e-10
        assert np.all(res.perron > 0)  # connected => strictly positive
        assert np.linalg.norm(res.perron) == pytest.approx(1.0, abs=1e-12)

    def test_degree_bounds(self):
        rng = random.Random(8)
        for trial in range(40):
            n = rng.randint(2, 14)
            g = random_graph(n, rng.random(), seed=300 + trial)
            for a in (0.0, 0.5, 0.9):
                rho = spectral_radius(g, a).radius
                assert g.min_degree() - 1e-8 <= rho <= g.max_degree() + 1e-8

    def test_disconnected_takes_max_over_components(self):
        # K4 plus an isolated triangle: radius is K4's
        g = Graph.from_edges(
            7, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5), (5, 6), (4, 6)]
        )
        assert spectral_radius(g, 0.0).radius == pytest.approx(3.0, abs=1e-9)

    def test_singleton_and_empty(self):
        assert spectral_radius(Graph.empty(1), 0.7).radius == pytest.approx(0.0)
        with pytest.raises(ValueError):
            spectral_radius(Graph.empty(0), 0.0)

    def test_nonconvergence_carries_residual(self):
        with pytest.raises(ConvergenceError) as err:
            spectral_radius(random_connected(12, 0.4, 77), 0.0, tol=1e-300)
        assert err.value.residual > 0

    def test_edge_addition_strict_monotonicity(self):
        rng = random.Random(99)
        for trial in range(25):
            g = random_connected(rng.randint(4, 10), 0.45, seed=trial)
            non_edges = g.non_edges()
            if not non_edges:
                continue
            u, v = non_edges[rng.randrange(len(non_edges))]
            bigger = g.add_edges([(u, v)])
            for a in (0.0, 0.5, 0.9):
                gap = spectral_radius(bigger, a).radius - spectral_radius(g, a).radius
                assert gap > 1e-12


class TestFullSpectrum:
    def test_k2(self):
        assert np.allclose(full_spectrum(alpha_matrix(Graph.complete(2), 0.0)), [1, -1])

    def test_c4(self):
        vals = full_spectrum(alpha_matrix(Graph.cycle(4), 0.0))
        assert np.allclose(vals, [2, 0, 0, -2], atol=1e-9)

    def test_k3_at_half(self):
        vals = full_spectrum(alpha_matrix(Graph.complete(3), 0.5))
        assert np.allclose(vals, [2.0, 0.5, 0.5], atol=1e-9)

    def test_matches_numpy_on_random_symmetric(self):
        rng = np.random.default_rng(15)
        for _ in range(20):
            n = int(rng.integers(1, 16))
            mat = rng.normal(size=(n, n))
            mat = mat + mat.T
            mine = full_spectrum(mat)
            ref = np.sort(np.linalg.eigvalsh(mat))[::-1]
            assert np.allclose(mine, ref, atol=1e-8)

    def test_trace_identity(self):
        g = random_graph(10, 0.5, 21)
        mat = alpha_matrix(g, 0.4)
        vals = full_spectrum(mat, tol=1e-10)
        assert abs(vals.sum() - np.trace(mat)) <= 10 * 1e-10

    def test_requires_symmetry(self):
        with pytest.raises(ValueError, match="symmetric"):
            full_spectrum(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_power_iteration_consistency(self):
        rng = random.Random(123)
        tol = 1e-10
        for trial in range(200):
            n = rng.randint(2, 20)
            g = random_graph(n, rng.uniform(0.1, 0.9), seed=5000 + trial)
            a = ALPHA_GRID[trial % len(ALPHA_GRID)]
            pi = spectral_radius(g, a, tol=tol).radius
            js = max(full_spectrum(alpha_matrix(g, a), tol=tol))
            assert abs(pi - js) <= 10 * tol

    def test_alpha_half_doubles_to_signless_laplacian(self):
        rng = random.Random(6)
        for trial in range(15):
            g = random_graph(rng.randint(2, 12), 0.5, seed=900 + trial)
            mine = 2.0 * full_spectrum(alpha_matrix(g, 0.5))
            adjacency = alpha_matrix(g, 0.0)
            q = np.diag(g.degrees()) + adjacency
            ref = np.sort(np.linalg.eigvalsh(q))[::-1]
            assert np.allclose(mine, ref, atol=1e-8)


class TestQuadraticFormDelta:
    def test_identical_graphs(self):
        g = Graph.cycle(5)
        x = np.ones(5)
        assert quadratic_form_delta(g, g, x, 0.3) == 0.0

    def test_single_edge_all_ones(self):
        before = Graph.empty(2)
        after = Graph.complete(2)
        assert quadratic_form_delta(after, before, np.ones(2), 0.0) == pytest.approx(2.0)

    def test_matches_dense_difference(self):
        rng = random.Random(17)
        for trial in range(25):
            n = rng.randint(2, 12)
            before = random_graph(n, 0.4, seed=trial)
            after = random_graph(n, 0.6, seed=1000 + trial)
            x = np.array([rng.uniform(-1, 1) for _ in range(n)])
            for a in (0.0, 0.35, 1.0):
                dense = x @ (alpha_matrix(after, a) - alpha_matrix(before, a)) @ x
                assert quadratic_form_delta(after, before, x, a) == pytest.approx(
                    dense, abs=1e-12
                )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            quadratic_form_delta(Graph.empty(3), Graph.empty(2), np.ones(3), 0.0)
        with pytest.raises(ValueError):
            quadratic_form_delta(Graph.empty(3), Graph.empty(3), np.ones(2), 0.0)
