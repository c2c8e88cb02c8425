"""Matrix formulation of betweenness for undirected graphs.

Forward pass: distances D and shortest-path counts Lambda.  Unweighted
graphs multiply by the adjacency matrix one level at a time, recording
each pair the first time its walk count becomes nonzero.  Weighted
graphs extend shortest paths one edge at a time with a counting
min-plus product.

Backward pass: dependencies Delta, swept from the farthest distance
level inwards, each level built from the one beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedGraphError, InconsistentApspError, UnsupportedGraphError
from .graph import Graph, adjacency_matrix, is_connected, weight_matrix
from .matrix import (
    INF,
    count_identity,
    counting_min_plus,
    elementwise,
    level_indicator,
    mask,
    mat_mul,
    min_plus_identity,
)
from .workers import WorkCounters


@dataclass(frozen=True)
class ApspResult:
    dist: np.ndarray  # float64, INF when unreachable
    counts: np.ndarray  # uint64, counts[i, i] == 1
    diameter: int

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __eq__(self, other):
        if not isinstance(other, ApspResult):
            return NotImplemented
        return (self.diameter == other.diameter and np.array_equal(self.dist, other.dist)
                and np.array_equal(self.counts, other.counts))


@dataclass(frozen=True)
class DependencyResult:
    delta: np.ndarray  # delta[s, v] = dependency of source s on v


def _diameter(d: np.ndarray) -> int:
    finite = d[np.isfinite(d)]
    return int(finite.max()) if finite.size else 0


def _require_undirected_connected(g: Graph) -> None:
    if g.directed:
        raise UnsupportedGraphError("the algebraic method handles undirected graphs only")
    if not is_connected(g):
        raise DisconnectedGraphError("the algebraic method needs a connected graph")


def compute_path_count(g: Graph, counters: WorkCounters | None = None) -> ApspResult:
    """Distances and path counts of an unweighted graph from powers of A.

    After ``l`` products ``Z = A**l`` counts walks of length ``l``; the
    first ``l`` at which ``z[i, j]`` is nonzero is ``d(i, j)`` and that
    walk count is the number of shortest paths.
    """
    _require_undirected_connected(g)
    if not g.unit_weights:
        raise UnsupportedGraphError("compute_path_count needs unit weights; use weighted_forward")
    n = g.n
    a = adjacency_matrix(g)
    z = count_identity(n)
    lam = count_identity(n)
    dist = min_plus_identity(n)
    resolved = np.eye(n, dtype=bool)
    level = 0
    while not resolved.all():
        level += 1
        z = mat_mul(z, a)
        new = ~resolved & (z > 0)
        if not new.any():
            raise DisconnectedGraphError("unreachable pairs remain")
        lam[new] = z[new]
        dist[new] = level
        resolved |= new
    if counters is not None:
        counters.add(products=level, forward_iterations=level)
    return ApspResult(dist, lam, level)


def compute_dependency(g: Graph, apsp: ApspResult, counters: WorkCounters | None = None,
                       trace=None) -> DependencyResult:
    """Backward pass for unweighted graphs.

    For l = Diam..1::

        Delta_{l-1} = mask(((D_l + Delta_l) div Lambda) . A, l-1) mult Lambda

    ``trace(l, product)`` if given sees each unmasked product; used by the
    level-locality checks.
    """
    _require_undirected_connected(g)
    a = adjacency_matrix(g)
    dist, lam = apsp.dist, apsp.counts
    if dist.shape != (g.n, g.n) or not np.array_equal(level_indicator(dist, 1), a):
        raise InconsistentApspError("distance-1 pairs do not match the adjacency matrix")
    delta = np.zeros((g.n, g.n))
    delta_l = np.zeros((g.n, g.n))
    for level in range(apsp.diameter, 0, -1):
        d_l = level_indicator(dist, level)
        prod = mat_mul(elementwise(elementwise(d_l, delta_l, "add"), lam, "div"), a)
        if trace is not None:
            trace(level, prod)
        delta_l = elementwise(mask(prod, dist, level - 1), lam, "mult")
        delta += delta_l
    # the level-0 sweep lands on the diagonal, which is not a dependency
    np.fill_diagonal(delta, 0.0)
    if counters is not None:
        counters.add(products=apsp.diameter)
    return DependencyResult(delta)


def weighted_forward(g: Graph, counters: WorkCounters | None = None) -> ApspResult:
    """Distances and counts for positive integer weights.

    Starting from the identity pair, each counting min-plus product with
    the strict one-step matrix (no diagonal) extends shortest paths by one
    edge; the last edge splits every path uniquely, so counts stay exact.
    Stops at the fixed point, after hop-diameter + 1 products.
    """
    _require_undirected_connected(g)
    n = g.n
    step = weight_matrix(g)
    np.fill_diagonal(step, INF)
    step_counts = adjacency_matrix(g)
    dist, lam = min_plus_identity(n), count_identity(n)
    products = 0
    while True:
        nd, nc = counting_min_plus(dist, lam, step, step_counts)
        products += 1
        np.fill_diagonal(nd, 0.0)
        np.fill_diagonal(nc, 1)
        if np.array_equal(nd, dist) and np.array_equal(nc, lam):
            break
        dist, lam = nd, nc
    if not np.isfinite(dist).all():
        raise DisconnectedGraphError("unreachable pairs remain")
    if counters is not None:
        counters.add(products=products, forward_iterations=products)
    return ApspResult(dist, lam, _diameter(dist))


def weighted_backward(g: Graph, apsp: ApspResult, counters: WorkCounters | None = None
                      ) -> DependencyResult:
    """Backward pass for weighted graphs.

    Distinct distance values are visited in descending order.  A pair
    (i, j) at distance l collects (1 + delta[i, k]) / lambda[i, k] over
    every edge (j, k) with d(i, k) = l + w(j, k), then scales by
    lambda[i, j].
    """
    _require_undirected_connected(g)
    dist, lam = apsp.dist, apsp.counts
    step = weight_matrix(g)
    if dist.shape != (g.n, g.n) or np.any(np.diag(dist) != 0) or np.any(dist > step):
        raise InconsistentApspError("distances exceed direct edge weights")
    np.fill_diagonal(step, INF)
    lamf = lam.astype(np.float64)
    delta = np.zeros((g.n, g.n))
    ratio = 1.0 / lamf  # (1 + delta) / lambda, refreshed as levels finish
    levels = np.unique(dist[np.isfinite(dist) & (dist > 0)])[::-1]
    for level in levels:
        ii, jj = np.nonzero(dist == level)
        for lo in range(0, ii.size, 256):
            i, j = ii[lo:lo + 256], jj[lo:lo + 256]
            tight = dist[i, :] == level + step[j, :]
            delta[i, j] = lamf[i, j] * (tight * ratio[i, :]).sum(axis=1)
        ratio[ii, jj] = (1.0 + delta[ii, jj]) / lamf[ii, jj]
    if counters is not None:
        counters.add(products=len(levels))
    return DependencyResult(delta)


def bc_from_dependencies(dep: DependencyResult, directed: bool, normalized: bool = True
                         ) -> list[float]:
    """BC(v) = sum over s != v of delta[s, v], halved for undirected graphs."""
    delta = dep.delta.copy()
    np.fill_diagonal(delta, 0.0)
    bc = delta.sum(axis=0)
    if normalized and not directed:
        bc = bc / 2.0
    return bc.tolist()


def algebraic_bc(g: Graph, normalized: bool = True, counters: WorkCounters | None = None
                 ) -> list[float]:
    _require_undirected_connected(g)
    if g.unit_weights:
        apsp = compute_path_count(g, counters)
        dep = compute_dependency(g, apsp, counters)
    else:
        apsp = weighted_forward(g, counters)
        dep = weighted_backward(g, apsp, counters)
    return bc_from_dependencies(dep, g.directed, normalized)
