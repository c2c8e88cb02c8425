import numpy as np
import pytest
from hypothesis import given, settings

from betweenness import generators as gen
from betweenness.algebraic import (
    ApspResult,
    DependencyResult,
    algebraic_bc,
    bc_from_dependencies,
    compute_dependency,
    compute_path_count,
    weighted_backward,
    weighted_forward,
)
from betweenness.brandes import accumulate_dependencies, sssp_with_counts
from betweenness.errors import (
    CountOverflowError,
    DisconnectedGraphError,
    InconsistentApspError,
    UnsupportedGraphError,
)
from betweenness.graph import Graph
from betweenness.oracle import oracle_bc, oracle_pair_dependency
from betweenness.workers import WorkCounters

from conftest import close, reference_apsp, small_graphs

TRIANGLE = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])


def brandes_delta(g):
    return np.array([accumulate_dependencies(sssp_with_counts(g, s)) for s in range(g.n)])


class TestComputePathCount:
    def test_triangle(self):
        r = compute_path_count(gen.complete(3))
        off = ~np.eye(3, dtype=bool)
        assert (r.dist[off] == 1).all() and (r.counts[off] == 1).all()
        assert r.diameter == 1

    def test_c4(self):
        r = compute_path_count(gen.cycle(4))
        assert (r.dist[0, 2], r.counts[0, 2]) == (2, 2)
        assert np.diag(r.counts).tolist() == [1] * 4

    def test_gnp_matches_bfs(self):
        g = gen.gnp(16, 0.3, 7)
        r = compute_path_count(g)
        d, c = reference_apsp(g)
        assert np.array_equal(r.dist, d)
        assert r.counts.tolist() == c

    def test_cycle_diameter_iterations(self):
        wc = WorkCounters()
        r = compute_path_count(gen.cycle(101), wc)
        assert r.diameter == 50 and wc.forward_iterations == 50

    def test_rejects_directed_and_disconnected(self):
        with pytest.raises(UnsupportedGraphError):
            compute_path_count(gen.tripartite_lb(2))
        with pytest.raises(DisconnectedGraphError):
            compute_path_count(Graph.from_edges(4, [(0, 1), (2, 3)]))

    def test_overflow(self):
        with pytest.raises(CountOverflowError):
            compute_path_count(gen.layered(70, 2))


class TestComputeDependency:
    def test_path(self):
        g = gen.path(3)
        delta = compute_dependency(g, compute_path_count(g)).delta
        assert delta[0].tolist() == [0.0, 1.0, 0.0]

    def test_star(self):
        g = gen.star(5)
        delta = compute_dependency(g, compute_path_count(g)).delta
        assert all(delta[leaf, 0] == 3.0 for leaf in range(1, 5))

    def test_c5(self):
        g = gen.cycle(5)
        assert sum(oracle_pair_dependency(g, 0, t, 1) for t in range(5)) == 1
        assert compute_dependency(g, compute_path_count(g)).delta[0, 1] == 1.0

    def test_inconsistent_apsp(self):
        g = gen.cycle(5)
        r = compute_path_count(g)
        bad = r.dist.copy()
        bad[0, 1] = bad[1, 0] = 2
        with pytest.raises(InconsistentApspError):
            compute_dependency(g, ApspResult(bad, r.counts, r.diameter))

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_brandes_rows(self, seed):
        g = gen.gnp(25, 0.2, seed)
        delta = compute_dependency(g, compute_path_count(g)).delta
        assert close(delta, brandes_delta(g))


class TestWeighted:
    def test_detour(self):
        r = weighted_forward(TRIANGLE)
        assert (r.dist[0, 2], r.counts[0, 2]) == (2, 1)

    def test_scaled_square(self):
        g = Graph.from_edges(4, [(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 0, 2)])
        r = weighted_forward(g)
        assert (r.dist[0, 2], r.counts[0, 2]) == (4, 2)

    @pytest.mark.parametrize("seed", range(4))
    def test_random_forward_matches_dijkstra(self, seed):
        g = gen.gnp(20, 0.25, seed, max_weight=10)
        r = weighted_forward(g)
        d, c = reference_apsp(g)
        assert np.array_equal(r.dist, d)
        assert r.counts.tolist() == c

    def test_backward_triangle(self):
        g = TRIANGLE
        assert weighted_backward(g, weighted_forward(g)).delta[0, 1] == 1.0

    def test_uniform_weight_c5_equals_unweighted(self):
        plain = gen.cycle(5)
        heavy = Graph.from_edges(5, [(u, v, 3) for u, v, _ in plain.edges])
        a = compute_dependency(plain, compute_path_count(plain)).delta
        b = weighted_backward(heavy, weighted_forward(heavy)).delta
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("seed", range(4))
    def test_random_backward_matches_brandes(self, seed):
        g = gen.gnp(20, 0.25, seed, max_weight=10)
        delta = weighted_backward(g, weighted_forward(g)).delta
        assert close(delta, brandes_delta(g))

    @settings(max_examples=30, deadline=None)
    @given(small_graphs(max_n=9, connected=True))
    def test_uniform_weights_scale_distances(self, g):
        heavy = Graph.from_edges(g.n, [(u, v, 4) for u, v, _ in g.edges])
        a, b = compute_path_count(g), weighted_forward(heavy)
        assert np.array_equal(b.dist, 4 * a.dist)
        assert np.array_equal(b.counts, a.counts)


class TestBcFromDependencies:
    def test_zero(self):
        assert bc_from_dependencies(DependencyResult(np.zeros((3, 3))), False) == [0.0] * 3

    def test_path(self):
        g = gen.path(3)
        dep = compute_dependency(g, compute_path_count(g))
        assert bc_from_dependencies(dep, False) == [0.0, 1.0, 0.0]

    def test_cycle9(self):
        g = gen.cycle(9)
        dep = compute_dependency(g, compute_path_count(g))
        assert bc_from_dependencies(dep, False) == oracle_bc(g)[1] == [6.0] * 9


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=10, connected=True))
def test_unweighted_matches_oracle(g):
    assert close(algebraic_bc(g), oracle_bc(g)[1])


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=9, weighted=True, connected=True))
def test_weighted_matches_oracle(g):
    assert close(algebraic_bc(g), oracle_bc(g)[1])


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=10, connected=True))
def test_level_locality_and_farthest_pairs(g):
    apsp = compute_path_count(g)
    seen = []

    def trace(level, product):
        # before masking, nothing lands on pairs more than one level closer
        assert not product[apsp.dist < level - 1].any()
        seen.append(level)

    delta = compute_dependency(g, apsp, trace=trace).delta
    assert seen == list(range(apsp.diameter, 0, -1))
    assert (delta[apsp.dist == apsp.diameter] == 0).all()
    assert (delta >= 0).all()


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=10, connected=True))
def test_sum_rule(g):
    d = compute_path_count(g).dist
    iu = np.triu_indices(g.n, 1)
    assert abs(sum(algebraic_bc(g)) - (d[iu] - 1).sum()) <= 1e-6
