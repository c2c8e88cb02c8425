"""Randomised parallel betweenness on a shared-memory thread pool.

Forward pass (unweighted): each round samples a set S of distinguished
vertices, runs hop-limited BFS from every x in S, closes the auxiliary
graph H on S under min-plus, and splices full distance rows for the
sources in S.  A row is accepted only if it passes the tense-edge
certificate, so returned distances are always exact; sampling luck only
changes the number of rounds.  Counts are then propagated over the
shortest-path DAG implied by the certified distances.

Backward pass: either the pairwise formula over (D, Lambda), or the
distance wavefront that fills Delta one distance value at a time.

Every parallel stage writes disjoint cells, and task boundaries are
fixed independently of the pool width, so results are bit-identical for
any number of workers.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .algebraic import ApspResult, DependencyResult, bc_from_dependencies
from .errors import (
    CountOverflowError,
    DisconnectedGraphError,
    SamplingExhaustedError,
    UnsupportedGraphError,
)
from .graph import INF, Graph, is_connected
from .matrix import U64_MAX, min_plus, min_plus_closure
from .workers import WorkCounters, chunked, pmap

UNRESOLVED = INF
PAIR_CHUNK = 4096
SOURCE_CHUNK = 8


@dataclass(frozen=True)
class SampleConfig:
    c: float = 3.0
    seed: int = 0
    max_rounds: int = 32

    def sample_size(self, n: int) -> int:
        if n <= 1:
            return n
        return min(n, math.ceil(self.c * math.sqrt(n) * math.log(n)))


@dataclass(frozen=True)
class AuxiliaryGraph:
    vertices: np.ndarray  # sampled vertex ids, ascending
    lengths: np.ndarray  # lengths[a, b]: hop-limited distance vertices[a] -> vertices[b], INF if none
    counts: np.ndarray  # number of hop-limited shortest paths realising lengths


def _ranges(starts: np.ndarray, lens: np.ndarray) -> np.ndarray:
    total = int(lens.sum())
    offs = np.cumsum(lens) - lens
    return np.arange(total) - np.repeat(offs, lens) + np.repeat(starts, lens)


def _scatter_counts(cnt: np.ndarray, targets: np.ndarray, sources: np.ndarray) -> None:
    """cnt[t] += cnt[s] for each (t, s); overflow-checked."""
    if targets.size == 0:
        return
    vals = cnt[sources]
    est = np.bincount(targets, weights=vals.astype(np.float64), minlength=cnt.size)
    est += cnt.astype(np.float64)
    if est.max() < 2.0**62:
        np.add.at(cnt, targets, vals)
        return
    exact = [int(x) for x in cnt]
    for t, v in zip(targets.tolist(), vals.tolist()):
        exact[t] += int(v)
    if max(exact) > U64_MAX:
        raise CountOverflowError("shortest-path count exceeds 2**64 - 1")
    cnt[:] = np.array(exact, dtype=np.uint64)


def limited_bfs(g: Graph, x: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """BFS from ``x`` stopped after ``k`` levels.

    Returns distances (UNRESOLVED beyond k hops) and exact shortest-path
    counts for every resolved vertex.
    """
    dist = np.full(g.n, UNRESOLVED)
    cnt = np.zeros(g.n, dtype=np.uint64)
    dist[x] = 0
    cnt[x] = 1
    frontier = np.array([x])
    for level in range(1, k + 1):
        if frontier.size == 0:
            break
        starts = g.indptr[frontier]
        lens = g.indptr[frontier + 1] - starts
        nbr = g.indices[_ranges(starts, lens)]
        src = np.repeat(frontier, lens)
        fresh = np.isinf(dist[nbr])
        nbr, src = nbr[fresh], src[fresh]
        dist[nbr] = level
        _scatter_counts(cnt, nbr, src)
        frontier = np.unique(nbr)
    return dist, cnt


def certify_sssp(g: Graph, s: int, dist: np.ndarray) -> bool:
    """True iff dist[s] == 0 and no arc (u, v) has dist[v] > dist[u] + w.

    Only meaningful when every finite label is the length of some real
    path from ``s``; feasible and achievable labels are exact.
    """
    if dist[s] != 0:
        return False
    src, dst, w = g.arcs()
    return bool(np.all(dist[dst] <= dist[src] + w))


def count_paths_from_distances(g: Graph, s: int, dist: np.ndarray) -> np.ndarray:
    """Shortest-path counts from ``s`` given exact distances.

    Vertices are finalised in increasing distance; each sums the counts
    of in-neighbours u with dist[u] + w(u, v) == dist[v].
    """
    cnt = np.zeros(g.n, dtype=np.uint64)
    cnt[s] = 1
    finite = np.isfinite(dist)
    for level in np.unique(dist[finite & (dist > 0)]):
        vs = np.nonzero(dist == level)[0]
        starts = g.in_indptr[vs]
        lens = g.in_indptr[vs + 1] - starts
        idx = _ranges(starts, lens)
        us, ws = g.in_indices[idx], g.in_weights[idx]
        vrep = np.repeat(vs, lens)
        tight = dist[us] + ws == level
        _scatter_counts(cnt, vrep[tight], us[tight])
    if np.any(finite & (cnt == 0)):
        raise ValueError(f"distance labels from {s} are not realised by tight edges")
    return cnt


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("parallel methods need a (weakly) connected graph")


def build_auxiliary(sample: np.ndarray, limited: list[tuple[np.ndarray, np.ndarray]]
                    ) -> AuxiliaryGraph:
    lengths = np.stack([d[sample] for d, _ in limited]) if len(sample) else np.zeros((0, 0))
    counts = np.stack([c[sample] for _, c in limited]) if len(sample) else np.zeros((0, 0), np.uint64)
    return AuxiliaryGraph(sample, lengths, counts)


def sampled_apsp(g: Graph, cfg: SampleConfig = SampleConfig(), workers: int = 1,
                 counters: WorkCounters | None = None) -> ApspResult:
    """Exact all-pairs distances and counts of an unweighted graph by
    sampled hop-limited search with certification."""
    if not g.unit_weights:
        raise UnsupportedGraphError("sampled_apsp needs unit weights; use parallel_dijkstra_apsp")
    _require_connected(g)
    n = g.n
    hop = math.isqrt(n - 1) + 1 if n > 1 else 0  # ceil(sqrt(n))
    size = cfg.sample_size(n)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(cfg.seed & (2**64 - 1))))
    dist = np.full((n, n), INF)
    lam = np.zeros((n, n), dtype=np.uint64)
    done = np.zeros(n, dtype=bool)
    rounds = relax = 0
    while not done.all():
        if rounds == cfg.max_rounds:
            raise SamplingExhaustedError(f"{int((~done).sum())} sources uncertified after {rounds} rounds")
        rounds += 1
        pending = np.nonzero(~done)[0]
        forced = rng.permutation(pending)[:size]
        rest = np.setdiff1d(np.arange(n), forced)
        fill = rng.choice(rest, size=size - forced.size, replace=False) if size > forced.size else []
        sample = np.sort(np.concatenate([forced, np.asarray(fill, dtype=np.int64)]))

        limited = pmap(lambda x: limited_bfs(g, int(x), hop), sample.tolist(), workers)
        aux = build_auxiliary(sample, limited)
        h_dist = min_plus_closure(aux.lengths)
        rows = min_plus(h_dist, np.stack([d for d, _ in limited]))
        relax += sample.size * 2 * g.m

        def finish(chunk):
            out = []
            for a in chunk:
                s = int(sample[a])
                if done[s] or not certify_sssp(g, s, rows[a]):
                    out.append(None)
                else:
                    out.append(count_paths_from_distances(g, s, rows[a]))
            return out

        results = [r for part in pmap(finish, chunked(range(sample.size), SOURCE_CHUNK), workers)
                   for r in part]
        for a, cnt in enumerate(results):
            if cnt is not None:
                s = int(sample[a])
                dist[s], lam[s], done[s] = rows[a], cnt, True
    if counters is not None:
        counters.add(rounds=rounds, relaxations=relax)
    finite = dist[np.isfinite(dist)]
    return ApspResult(dist, lam, int(finite.max()) if finite.size else 0)


def _dijkstra(adj, n: int, s: int) -> tuple[np.ndarray, int]:
    dist = [INF] * n
    dist[s] = 0
    heap = [(0, s)]
    relax = 0
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            relax += 1
            if d + w < dist[v]:
                dist[v] = d + w
                heapq.heappush(heap, (d + w, v))
    return np.array(dist, dtype=np.float64), relax


def parallel_dijkstra_apsp(g: Graph, workers: int = 1, counters: WorkCounters | None = None
                           ) -> ApspResult:
    """Per-source Dijkstra fanned across the pool, counts from the distance DAG."""
    _require_connected(g)
    adj = g.adjacency_lists()

    def run(sources):
        rows = []
        for s in sources:
            d, r = _dijkstra(adj, g.n, s)
            rows.append((d, count_paths_from_distances(g, s, d), r))
        return rows

    rows = [r for part in pmap(run, chunked(range(g.n), SOURCE_CHUNK), workers) for r in part]
    dist = np.stack([r[0] for r in rows]) if rows else np.zeros((0, 0))
    lam = np.stack([r[1] for r in rows]) if rows else np.zeros((0, 0), np.uint64)
    if counters is not None:
        counters.add(relaxations=sum(r[2] for r in rows))
    finite = dist[np.isfinite(dist)]
    return ApspResult(dist, lam, int(finite.max()) if finite.size else 0)


def parallel_forward(g: Graph, cfg: SampleConfig = SampleConfig(), workers: int = 1,
                     counters: WorkCounters | None = None) -> ApspResult:
    if g.unit_weights:
        return sampled_apsp(g, cfg, workers, counters)
    return parallel_dijkstra_apsp(g, workers, counters)


def _inverse_counts(lam: np.ndarray) -> np.ndarray:
    lamf = lam.astype(np.float64)
    inv = np.zeros_like(lamf)
    np.divide(1.0, lamf, out=inv, where=lamf > 0)
    return inv


def pairwise_bc(apsp: ApspResult, directed: bool, normalized: bool = True, workers: int = 1
                ) -> list[float]:
    """BC(v) = sum over s != v != t with d(s,t) = d(s,v) + d(v,t) of
    lambda_sv * lambda_vt / lambda_st."""
    dist = apsp.dist
    lamf = apsp.counts.astype(np.float64)
    inv = _inverse_counts(apsp.counts)
    n = apsp.n

    def one(v):
        on_path = (dist[:, v, None] + dist[None, v, :]) == dist
        on_path[v, :] = False
        on_path[:, v] = False
        on_path &= np.isfinite(dist)
        return float((on_path * np.outer(lamf[:, v], lamf[v, :]) * inv).sum())

    bc = [x for part in pmap(lambda vs: [one(v) for v in vs], chunked(range(n), SOURCE_CHUNK), workers)
          for x in part]
    if normalized and not directed:
        bc = [b / 2.0 for b in bc]
    return bc


def wavefront_dependencies(g: Graph, apsp: ApspResult, workers: int = 1,
                           check_levels: bool = False) -> DependencyResult:
    """Dependencies for all ordered pairs, one distance value at a time.

    Pairs at distance d are independent of each other: each reads only
    pairs (u, w) with d(u, w) > d, which earlier sweeps have finished.
    ``check_levels`` asserts exactly that on every read.
    """
    dist = apsp.dist
    lamf = apsp.counts.astype(np.float64)
    ratio = _inverse_counts(apsp.counts)
    delta = np.zeros_like(lamf)
    finished = np.zeros(dist.shape, dtype=bool) if check_levels else None
    levels = np.unique(dist[np.isfinite(dist) & (dist > 0)])[::-1]
    for level in levels:
        uu, vv = np.nonzero(dist == level)

        def run(lo, level=level, uu=uu, vv=vv):
            u, v = uu[lo:lo + PAIR_CHUNK], vv[lo:lo + PAIR_CHUNK]
            starts = g.indptr[v]
            lens = g.indptr[v + 1] - starts
            idx = _ranges(starts, lens)
            pid = np.repeat(np.arange(u.size), lens)
            w, wt = g.indices[idx], g.weights[idx]
            urep = u[pid]
            tight = dist[urep, w] == level + wt
            if finished is not None:
                assert finished[urep[tight], w[tight]].all(), "read an unfinished dependency"
            acc = np.bincount(pid, weights=np.where(tight, ratio[urep, w], 0.0), minlength=u.size)
            delta[u, v] = lamf[u, v] * acc

        pmap(run, range(0, uu.size, PAIR_CHUNK), workers)
        # barrier: the level is complete before anyone reads it
        ratio[uu, vv] = (1.0 + delta[uu, vv]) / lamf[uu, vv]
        if finished is not None:
            finished[uu, vv] = True
    return DependencyResult(delta)


def parallel_pairwise_bc(g: Graph, cfg: SampleConfig = SampleConfig(), workers: int = 1,
                         normalized: bool = True, counters: WorkCounters | None = None
                         ) -> list[float]:
    return pairwise_bc(parallel_forward(g, cfg, workers, counters), g.directed, normalized, workers)


def parallel_wavefront_bc(g: Graph, cfg: SampleConfig = SampleConfig(), workers: int = 1,
                          normalized: bool = True, counters: WorkCounters | None = None
                          ) -> list[float]:
    apsp = parallel_forward(g, cfg, workers, counters)
    return bc_from_dependencies(wavefront_dependencies(g, apsp, workers), g.directed, normalized)
