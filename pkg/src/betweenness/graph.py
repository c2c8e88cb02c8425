"""Immutable graph container, edge-list I/O and structural queries.

Vertices are dense zero-based integers.  Edge weights are positive
integers; an unweighted graph is simply one where every weight is 1.
Adjacency is kept in compressed (CSR) form: ``indptr[u]:indptr[u+1]``
slices ``indices``/``weights`` to give the neighbours of ``u`` sorted by
id.  For directed graphs a second CSR holds in-neighbours.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DisconnectedGraphError, GraphFormatError

INF = float("inf")


def _csr(n: int, src: np.ndarray, dst: np.ndarray, w: np.ndarray):
    order = np.lexsort((dst, src))
    src, dst, w = src[order], dst[order], w[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    for arr in (indptr, dst, w):
        arr.flags.writeable = False
    return indptr, dst, w


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    directed: bool
    weighted: bool
    edges: tuple[tuple[int, int, int], ...]
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    in_indptr: np.ndarray = field(repr=False)
    in_indices: np.ndarray = field(repr=False)
    in_weights: np.ndarray = field(repr=False)

    @classmethod
    def from_edges(cls, n, edges, directed=False, weighted=None) -> "Graph":
        """Validate and build a graph.

        ``edges`` holds ``(u, v)`` or ``(u, v, w)`` tuples.  ``weighted``
        only records which text format the graph serialises to; when left
        as None it is inferred from the data.
        """
        if n < 0:
            raise GraphFormatError(f"negative vertex count {n}")
        norm: list[tuple[int, int, int]] = []
        seen: set[tuple[int, int]] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = int(e[2]) if len(e) > 2 else 1
            _check_edge(n, u, v, w, seen, directed)
            norm.append((u, v, w))
        if weighted is None:
            weighted = any(w != 1 for _, _, w in norm)
        elif not weighted and any(w != 1 for _, _, w in norm):
            raise GraphFormatError("unweighted graph with non-unit weight")

        m = len(norm)
        arr = np.array(norm, dtype=np.int64).reshape(m, 3)
        u, v, w = arr[:, 0], arr[:, 1], arr[:, 2]
        if directed:
            out = _csr(n, u, v, w)
            inc = _csr(n, v, u, w)
        else:
            out = _csr(n, np.concatenate([u, v]), np.concatenate([v, u]), np.concatenate([w, w]))
            inc = out
        return cls(n, bool(directed), bool(weighted), tuple(norm), *out, *inc)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_weight(self) -> int:
        return max((w for _, _, w in self.edges), default=1)

    @property
    def unit_weights(self) -> bool:
        return self.max_weight == 1

    def neighbors(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        """Out-neighbours of ``u`` and the matching weights."""
        lo, hi = self.indptr[u], self.indptr[u + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def in_neighbors(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.in_indptr[u], self.in_indptr[u + 1]
        return self.in_indices[lo:hi], self.in_weights[lo:hi]

    def arcs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """All arcs as (src, dst, weight) arrays; undirected edges appear in both directions."""
        src = np.repeat(np.arange(self.n), np.diff(self.indptr))
        return src, np.asarray(self.indices), np.asarray(self.weights)

    def adjacency_lists(self) -> list[list[tuple[int, int]]]:
        ptr, idx, wts = self.indptr.tolist(), self.indices.tolist(), self.weights.tolist()
        return [list(zip(idx[ptr[u]:ptr[u + 1]], wts[ptr[u]:ptr[u + 1]])) for u in range(self.n)]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.directed, self.weighted, self.edges) == (
            other.n, other.directed, other.weighted, other.edges)

    def __hash__(self):
        return hash((self.n, self.directed, self.weighted, self.edges))


def _check_edge(n, u, v, w, seen, directed, lineno=None):
    if not (0 <= u < n and 0 <= v < n):
        raise GraphFormatError(f"vertex id out of range in edge ({u}, {v}) for n={n}", lineno)
    if u == v:
        raise GraphFormatError(f"self-loop at vertex {u}", lineno)
    if w < 1:
        raise GraphFormatError(f"weight {w} < 1 on edge ({u}, {v})", lineno)
    key = (u, v) if directed else (min(u, v), max(u, v))
    if key in seen:
        raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
    seen.add(key)


def from_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    Header ``n m directed|undirected weighted|unweighted`` followed by m
    edge lines ``u v`` or ``u v w``.  Lines starting with ``#`` and blank
    lines are ignored.
    """
    header = None
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if header is None:
            if len(tok) != 4 or tok[2] not in ("directed", "undirected") or tok[3] not in (
                "weighted", "unweighted"):
                raise GraphFormatError(f"bad header {line!r}", lineno)
            try:
                n, m = int(tok[0]), int(tok[1])
            except ValueError:
                raise GraphFormatError(f"bad header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("negative count in header", lineno)
            header = (n, m, tok[2] == "directed", tok[3] == "weighted")
            continue
        n, m, directed, weighted = header
        want = 3 if weighted else 2
        if len(tok) != want:
            raise GraphFormatError(f"expected {want} fields, got {len(tok)}", lineno)
        try:
            vals = [int(t) for t in tok]
        except ValueError:
            raise GraphFormatError(f"non-integer field in {line!r}", lineno) from None
        u, v = vals[0], vals[1]
        w = vals[2] if weighted else 1
        _check_edge(n, u, v, w, seen, directed, lineno)
        edges.append((u, v, w))
        if len(edges) > m:
            raise GraphFormatError(f"more than the declared {m} edges", lineno)
    if header is None:
        raise GraphFormatError("missing header")
    n, m, directed, weighted = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges, directed=directed, weighted=weighted)


def to_edge_list(g: Graph) -> str:
    kind = "directed" if g.directed else "undirected"
    wk = "weighted" if g.weighted else "unweighted"
    lines = [f"{g.n} {g.m} {kind} {wk}"]
    if g.weighted:
        lines += [f"{u} {v} {w}" for u, v, w in g.edges]
    else:
        lines += [f"{u} {v}" for u, v, _ in g.edges]
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    return from_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(to_edge_list(g))


def is_connected(g: Graph) -> bool:
    """Connectivity from vertex 0; weak connectivity for directed graphs."""
    if g.n <= 1:
        return True
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for nbrs in (g.neighbors(u)[0], g.in_neighbors(u)[0] if g.directed else ()):
            for v in nbrs:
                if not seen[v]:
                    seen[v] = True
                    queue.append(int(v))
    return bool(seen.all())


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")


def max_degree(g: Graph) -> int:
    deg = np.diff(g.indptr)
    if g.directed:
        deg = deg + np.diff(g.in_indptr)
    return int(deg.max()) if g.n else 0


def adjacency_matrix(g: Graph) -> np.ndarray:
    """0-1 adjacency as uint64 (``a[u, v] = 1`` iff arc u->v)."""
    a = np.zeros((g.n, g.n), dtype=np.uint64)
    src, dst, _ = g.arcs()
    a[src, dst] = 1
    return a


def weight_matrix(g: Graph) -> np.ndarray:
    """One-step distance matrix: 0 on the diagonal, w on arcs, INF elsewhere."""
    d = np.full((g.n, g.n), INF)
    src, dst, w = g.arcs()
    d[src, dst] = w
    np.fill_diagonal(d, 0.0)
    return d
