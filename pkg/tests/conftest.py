from __future__ import annotations

from hypothesis import strategies as st

from packcolor.graph import Graph


@st.composite
def subcubic_graphs(draw, max_n: int = 12) -> Graph:
    n = draw(st.integers(0, max_n))
    if n < 2:
        return Graph.from_edges(n, [])
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    deg = [0] * n
    edges: set[tuple[int, int]] = set()
    for u, v in pairs:
        key = (min(u, v), max(u, v))
        if u == v or key in edges or deg[u] >= 3 or deg[v] >= 3:
            continue
        edges.add(key)
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(n, sorted(edges))


def bfs_all(g: Graph, s: int) -> list[float]:
    """Plain BFS kept separate from the library's, for cross-checks."""
    dist = [float("inf")] * g.n
    dist[s] = 0
    frontier = [s]
    while frontier:
        nxt = []
        for a in frontier:
            for b in g.adjacency[a]:
                if dist[b] == float("inf"):
                    dist[b] = dist[a] + 1
                    nxt.append(b)
        frontier = nxt
    return dist


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(test_acceptance.RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = test_acceptance.RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
