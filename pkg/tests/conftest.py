import heapq
from collections import deque

import numpy as np
import pytest
from hypothesis import strategies as st

from betweenness.generators import standard_corpus
from betweenness.graph import Graph

TOL = 1e-9


def close(a, b, tol=TOL):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return np.all(np.abs(a - b) <= np.maximum(tol, tol * np.maximum(np.abs(a), np.abs(b))))


def reference_apsp(g: Graph):
    """Per-source BFS/Dijkstra with Python-int path counts, written from scratch for tests."""
    adj = {u: [] for u in range(g.n)}
    for u, v, w in g.edges:
        adj[u].append((v, w))
        if not g.directed:
            adj[v].append((u, w))
    dist = np.full((g.n, g.n), np.inf)
    counts = [[0] * g.n for _ in range(g.n)]
    for s in range(g.n):
        d = {s: 0}
        c = {s: 1}
        if g.unit_weights:
            q = deque([s])
            while q:
                u = q.popleft()
                for v, _ in adj[u]:
                    if v not in d:
                        d[v] = d[u] + 1
                        c[v] = 0
                        q.append(v)
                    if d[v] == d[u] + 1:
                        c[v] += c[u]
        else:
            settled = set()
            heap = [(0, s)]
            while heap:
                du, u = heapq.heappop(heap)
                if u in settled:
                    continue
                settled.add(u)
                for v, w in adj[u]:
                    if v not in d or du + w < d[v]:
                        d[v], c[v] = du + w, c[u]
                        heapq.heappush(heap, (du + w, v))
                    elif du + w == d[v] and v not in settled:
                        c[v] += c[u]
        for v, x in d.items():
            dist[s, v] = x
            counts[s][v] = c[v]
    return dist, counts


def small_graphs(max_n=10, weighted=False, connected=False):
    """Hypothesis strategy for small undirected graphs."""

    @st.composite
    def build(draw):
        n = draw(st.integers(2, max_n))
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
        if connected:
            chosen = sorted(set(chosen) | {(i, i + 1) for i in range(n - 1)})
        edges = [(u, v, draw(st.integers(1, 6)) if weighted else 1) for u, v in chosen]
        return Graph.from_edges(n, edges, weighted=weighted)

    return build()


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria[number] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
