"""Sequential baseline: one shortest-path search per source plus
dependency accumulation in reverse settle order."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .errors import CountOverflowError
from .graph import INF, Graph
from .matrix import U64_MAX
from .workers import WorkCounters, chunked, pmap

# sources per task; fixed so partial sums do not depend on the pool width
SOURCE_CHUNK = 16


@dataclass
class SsspState:
    source: int
    dist: list
    sigma: list[int]
    preds: list[list[int]]
    order: list[int]
    relaxations: int = 0


def sssp_with_counts(g: Graph, s: int, adj=None) -> SsspState:
    """BFS (unit weights) or Dijkstra from ``s`` recording counts and predecessors.

    Unreachable vertices keep distance INF, count 0 and no predecessors.
    The heap is ordered by (distance, vertex id).
    """
    if not 0 <= s < g.n:
        raise IndexError(f"source {s} out of range")
    adj = adj if adj is not None else g.adjacency_lists()
    n = g.n
    dist = [INF] * n
    sigma = [0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    order: list[int] = []
    dist[s] = 0
    sigma[s] = 1
    relax = 0
    if g.unit_weights:
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            du = dist[u] + 1
            for v, _ in adj[u]:
                relax += 1
                if dist[v] == INF:
                    dist[v] = du
                    queue.append(v)
                if dist[v] == du:
                    sigma[v] += sigma[u]
                    if sigma[v] > U64_MAX:
                        raise CountOverflowError(f"path count from {s} to {v} exceeds 2**64 - 1")
                    preds[v].append(u)
    else:
        heap = [(0, s)]
        done = [False] * n
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            order.append(u)
            for v, w in adj[u]:
                relax += 1
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    sigma[v] = sigma[u]
                    preds[v] = [u]
                    heapq.heappush(heap, (nd, v))
                elif nd == dist[v] and not done[v]:
                    sigma[v] += sigma[u]
                    if sigma[v] > U64_MAX:
                        raise CountOverflowError(f"path count from {s} to {v} exceeds 2**64 - 1")
                    preds[v].append(u)
    return SsspState(s, dist, sigma, preds, order, relax)


def accumulate_dependencies(state: SsspState) -> list[float]:
    """delta[v] = sum over w with v in preds[w] of sigma[v]/sigma[w] * (1 + delta[w])."""
    delta = [0.0] * len(state.dist)
    sigma = state.sigma
    for w in reversed(state.order):
        coeff = (1.0 + delta[w]) / sigma[w]
        for v in state.preds[w]:
            delta[v] += sigma[v] * coeff
    delta[state.source] = 0.0
    return delta


def brandes_bc(g: Graph, normalized: bool = True, workers: int = 1,
               counters: WorkCounters | None = None) -> list[float]:
    """Betweenness of every vertex; undirected scores are halved unless ``normalized`` is False.

    Works on directed and disconnected graphs.
    """
    adj = g.adjacency_lists()

    def run(sources):
        part = [0.0] * g.n
        relax = 0
        for s in sources:
            st = sssp_with_counts(g, s, adj)
            relax += st.relaxations
            for v, dv in enumerate(accumulate_dependencies(st)):
                part[v] += dv
        return part, relax

    bc = [0.0] * g.n
    total_relax = 0
    for part, relax in pmap(run, chunked(range(g.n), SOURCE_CHUNK), workers):
        total_relax += relax
        for v in range(g.n):
            bc[v] += part[v]
    if counters is not None:
        counters.add(relaxations=total_relax)
    if normalized and not g.directed:
        bc = [b / 2.0 for b in bc]
    return bc
