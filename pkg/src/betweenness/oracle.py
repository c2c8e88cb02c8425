"""Brute-force ground truth: explicit shortest-path enumeration and exact
rational betweenness.

Nothing here shares code with the production methods.  Distances come
from a plain Bellman-Ford relaxation loop, and every shortest path is
listed explicitly by walking tight edges backwards from the target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OracleCapError
from .graph import INF, Graph

MAX_VERTICES = 64
MAX_PATHS = 10**6


@dataclass(frozen=True)
class PathSet:
    source: int
    target: int
    paths: tuple[tuple[int, ...], ...]
    length: float

    @property
    def count(self) -> int:
        return len(self.paths)

    def through(self, v: int) -> int:
        return sum(1 for p in self.paths if v in p)


def _arc_list(g: Graph) -> list[tuple[int, int, int]]:
    arcs = [(u, v, w) for u, v, w in g.edges]
    if not g.directed:
        arcs += [(v, u, w) for u, v, w in g.edges]
    return arcs


def _in_arcs(g: Graph) -> list[list[tuple[int, int]]]:
    into: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for u, v, w in _arc_list(g):
        into[v].append((u, w))
    return into


def _bellman_ford(n: int, arcs, s: int) -> list:
    dist = [INF] * n
    dist[s] = 0
    for _ in range(n):
        changed = False
        for u, v, w in arcs:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    return dist


def _check_size(g: Graph, max_vertices: int) -> None:
    if g.n > max_vertices:
        raise OracleCapError(f"graph has {g.n} vertices, oracle cap is {max_vertices}")


def _enumerate(dist, into, s, t, max_paths) -> list[tuple[int, ...]]:
    if dist[t] == INF:
        return []
    done: list[tuple[int, ...]] = []
    stack = [(t, (t,))]
    while stack:
        v, suffix = stack.pop()
        if v == s:
            done.append(suffix)
            if len(done) > max_paths:
                raise OracleCapError(f"more than {max_paths} shortest paths from {s} to {t}")
            continue
        for u, w in into[v]:
            if dist[u] + w == dist[v]:
                stack.append((u, (u,) + suffix))
    return sorted(done)


def enumerate_shortest_paths(g: Graph, s: int, t: int, max_vertices: int = MAX_VERTICES,
                             max_paths: int = MAX_PATHS) -> PathSet:
    """Every shortest s-t path as a vertex sequence.

    An unreachable pair gives an empty set with length INF.  Exceeding
    either cap raises OracleCapError; results are never truncated.
    """
    _check_size(g, max_vertices)
    dist = _bellman_ford(g.n, _arc_list(g), s)
    paths = _enumerate(dist, _in_arcs(g), s, t, max_paths)
    return PathSet(s, t, tuple(paths), dist[t])


def oracle_pair_dependency(g: Graph, s: int, t: int, v: int, max_vertices: int = MAX_VERTICES,
                           max_paths: int = MAX_PATHS) -> Fraction:
    if v in (s, t):
        return Fraction(0)
    ps = enumerate_shortest_paths(g, s, t, max_vertices, max_paths)
    if not ps.count:
        return Fraction(0)
    return Fraction(ps.through(v), ps.count)


def oracle_bc(g: Graph, normalized: bool = True, max_vertices: int = MAX_VERTICES,
              max_paths: int = MAX_PATHS) -> tuple[list[Fraction], list[float]]:
    """Exact betweenness as Fractions, plus the same values rounded to float."""
    _check_size(g, max_vertices)
    arcs, into = _arc_list(g), _in_arcs(g)
    through = [Fraction(0)] * g.n
    for s in range(g.n):
        dist = _bellman_ford(g.n, arcs, s)
        for t in range(g.n):
            if t == s or dist[t] == INF:
                continue
            paths = _enumerate(dist, into, s, t, max_paths)
            hits = [0] * g.n
            for p in paths:
                for v in p[1:-1]:
                    hits[v] += 1
            for v, h in enumerate(hits):
                if h:
                    through[v] += Fraction(h, len(paths))
    if normalized and not g.directed:
        through = [x / 2 for x in through]
    return through, [float(x) for x in through]
