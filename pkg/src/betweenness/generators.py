"""Deterministic graph families.

Random families draw from numpy's PCG64 bit generator seeded through
``SeedSequence([seed, attempt])``.  The stream layout (edge candidates in
lexicographic (i, j) order, then weights) is part of the contract: the
same arguments always give byte-identical edge lists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedGraphError
from .graph import Graph, is_connected

RNG_NAME = "pcg64-seedseq-v1"


def _rng(seed: int, attempt: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & (2**64 - 1), attempt])))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], weighted=False)


def path(n: int) -> Graph:
    if n < 2:
        raise ValueError("path needs n >= 2")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], weighted=False)


def star(n: int) -> Graph:
    """Centre 0 joined to leaves 1..n-1."""
    if n < 2:
        raise ValueError("star needs n >= 2")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)], weighted=False)


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], weighted=False)


def _weights(rng, m: int, max_weight: int) -> list[int]:
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    if max_weight == 1:
        return [1] * m
    return rng.integers(1, max_weight + 1, size=m).tolist()


def gnp(n: int, p: float, seed: int, max_weight: int = 1, retries: int = 1000) -> Graph:
    """Connected Erdos-Renyi G(n, p); resamples with the next sub-seed until connected."""
    if n < 1 or not 0 < p <= 1:
        raise ValueError(f"invalid gnp parameters n={n}, p={p}")
    iu, ju = np.triu_indices(n, k=1)
    for attempt in range(retries):
        rng = _rng(seed, attempt)
        keep = rng.random(iu.size) < p
        pairs = list(zip(iu[keep].tolist(), ju[keep].tolist()))
        w = _weights(rng, len(pairs), max_weight)
        g = Graph.from_edges(n, [(u, v, x) for (u, v), x in zip(pairs, w)],
                             weighted=max_weight > 1)
        if is_connected(g):
            return g
    raise DisconnectedGraphError(f"gnp({n}, {p}) not connected after {retries} attempts")


def bounded_degree(n: int, d: int, seed: int, max_weight: int = 1) -> Graph:
    """Connected graph with max degree <= d: a random Hamiltonian path plus
    rejection-sampled extra edges (n*d proposals)."""
    if n < 2 or d < 2:
        raise ValueError(f"invalid bounded_degree parameters n={n}, d={d}")
    rng = _rng(seed)
    perm = rng.permutation(n).tolist()
    deg = [0] * n
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []

    def add(u, v):
        pairs.append((u, v))
        seen.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1

    for a, b in zip(perm, perm[1:]):
        add(a, b)
    for u, v in rng.integers(0, n, size=(n * d, 2)).tolist():
        if u != v and (min(u, v), max(u, v)) not in seen and deg[u] < d and deg[v] < d:
            add(u, v)
    w = _weights(rng, len(pairs), max_weight)
    return Graph.from_edges(n, [(u, v, x) for (u, v), x in zip(pairs, w)],
                            weighted=max_weight > 1)


def tripartite_lb(n: int) -> Graph:
    """Directed layers u_0..u_{n-1} -> v_0..v_{n-1} -> w_0..w_{n-1} (ids i, n+j, 2n+k).

    Arcs through v_0 weigh 1 and all others n + 2, so u_i -> v_0 -> w_k
    (weight 2) is the unique shortest u_i to w_k route.
    """
    if n < 1:
        raise ValueError("tripartite_lb needs n >= 1")
    heavy = n + 2
    arcs = []
    for j in range(n):
        w = 1 if j == 0 else heavy
        arcs += [(i, n + j, w) for i in range(n)]
        arcs += [(n + j, 2 * n + k, w) for k in range(n)]
    return Graph.from_edges(3 * n, arcs, directed=True, weighted=True)


def layered(layers: int, width: int = 2) -> Graph:
    """Consecutive layers joined completely: width**(layers-2) shortest paths between
    a first-layer and a last-layer vertex."""
    if layers < 1 or width < 1:
        raise ValueError("layered needs layers >= 1 and width >= 1")
    edges = []
    for layer in range(layers - 1):
        a, b = layer * width, (layer + 1) * width
        edges += [(a + i, b + j) for i in range(width) for j in range(width)]
    return Graph.from_edges(layers * width, edges, weighted=False)


FAMILIES = {
    "cycle": (cycle, [int]),
    "path": (path, [int]),
    "star": (star, [int]),
    "complete": (complete, [int]),
    "gnp": (gnp, [int, float]),
    "bounded_degree": (bounded_degree, [int, int]),
    "tripartite_lb": (tripartite_lb, [int]),
    "layered": (layered, [int, int]),
}
RANDOM_FAMILIES = {"gnp", "bounded_degree"}


@dataclass(frozen=True)
class GenSpec:
    family: str
    params: tuple = ()
    seed: int = 0
    max_weight: int = 1

    def build(self) -> Graph:
        family = self.family.replace("-", "_")
        if family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        fn, types = FAMILIES[family]
        required = 1 if family == "layered" else len(types)
        if not required <= len(self.params) <= len(types):
            raise ValueError(f"{family} takes {len(types)} parameters")
        args = [t(x) for t, x in zip(types, self.params)]
        if family in RANDOM_FAMILIES:
            return fn(*args, seed=self.seed, max_weight=self.max_weight)
        if self.max_weight != 1:
            raise ValueError(f"{family} does not take weights")
        return fn(*args)


def standard_corpus(seed: int = 0, max_n: int = 40) -> list[tuple[str, Graph]]:
    """200 connected undirected graphs: 100 unweighted gnp, 50 weighted gnp
    (M <= 10) and 50 bounded-degree (d <= 4), all with n <= max_n."""
    rng = _rng(seed, 2**32)
    out: list[tuple[str, Graph]] = []
    for i in range(200):
        n = int(rng.integers(4, max_n + 1))
        sub = int(rng.integers(0, 2**63))
        if i < 150:
            p = float(rng.uniform(max(0.08, 1.2 * np.log(n) / n), 0.5))
            weight = 1 if i < 100 else int(rng.integers(2, 11))
            out.append((f"gnp({n},{p:.3f},{sub},M={weight})", gnp(n, p, sub, max_weight=weight)))
        else:
            d = int(rng.integers(2, 5))
            out.append((f"bounded_degree({n},{d},{sub})", bounded_degree(n, d, sub)))
    return out
