"""Simple undirected graphs on dense integer ids, plus the degree-class predicates.

Vertices are ``0..n-1``. A :class:`Graph` is immutable once built; adjacency is
stored as sorted tuples so iteration order is reproducible.
"""

from __future__ import annotations

import io
import math
from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

INF = math.inf


class GraphFormatError(ValueError):
    """Raised when an edge list cannot be parsed into a simple graph."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph, rejecting loops, duplicate edges and bad ids."""
        if n < 0:
            raise GraphFormatError("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError("vertex id out of range")
            if u == v:
                raise GraphFormatError("loop edge")
            if v in nbrs[u]:
                raise GraphFormatError("duplicate edge")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length does not match n")

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for graph on {g.n} vertices")


def degree(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return len(g.adjacency[v])


def bfs_distances(g: Graph, source: int, limit: int | None = None) -> dict[int, int]:
    """Distances from ``source`` to every vertex within ``limit`` hops."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u]
        if limit is not None and d >= limit:
            continue
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    """Shortest-path length, or ``INF`` when ``u`` and ``v`` are disconnected."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    return bfs_distances(g, u).get(v, INF)


def first_close_pair(g: Graph, members: Iterable[int], radius: int) -> tuple[int, int, int] | None:
    """Smallest pair ``(u, v, d)`` of members with ``d = dist(u, v) <= radius``.

    A single multi-source BFS truncated at ``radius`` decides whether any such
    pair exists; only then are members probed one by one to find the
    lexicographically smallest offender.
    """
    srcs = sorted(set(members))
    if len(srcs) < 2 or radius < 1:
        return None
    owner: dict[int, int] = {}
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in srcs:
        owner[s] = s
        dist[s] = 0
        queue.append(s)
    clash = False
    while queue and not clash:
        a = queue.popleft()
        for b in g.adjacency[a]:
            if b not in owner:
                if dist[a] + 1 <= radius:
                    owner[b] = owner[a]
                    dist[b] = dist[a] + 1
                    queue.append(b)
            elif owner[b] != owner[a] and dist[a] + dist[b] + 1 <= radius:
                clash = True
                break
    if not clash:
        return None
    member_set = set(srcs)
    for u in srcs:
        ball = bfs_distances(g, u, radius)
        close = [w for w in ball if w in member_set and w > u]
        if close:
            v = min(close)
            return u, v, ball[v]
    raise AssertionError("multi-source BFS reported a clash that per-source BFS cannot find")


def is_subcubic(g: Graph) -> bool:
    return g.max_degree() <= 3


def is_3_irregular(g: Graph) -> bool:
    """True when no edge joins two degree-3 vertices (degree pattern only)."""
    deg = [len(a) for a in g.adjacency]
    return all(not (deg[u] == 3 and deg[v] == 3) for u, v in g.edges())


def is_i_saturated(g: Graph, i: int) -> bool:
    """True when every degree-3 vertex has exactly ``i`` degree-3 neighbours."""
    if not is_subcubic(g):
        raise ValueError("not subcubic")
    if not 0 <= i <= 3:
        raise ValueError(f"saturation index must be in 0..3, got {i}")
    deg = [len(a) for a in g.adjacency]
    for v in range(g.n):
        if deg[v] == 3 and sum(deg[w] == 3 for w in g.adjacency[v]) != i:
            return False
    return True


def subdivide(g: Graph) -> Graph:
    """Replace every edge by a path of length two.

    Original ids are kept; the midpoint of the k-th edge in lexicographic order
    gets id ``n + k``.
    """
    new_edges = []
    for k, (u, v) in enumerate(g.edges()):
        mid = g.n + k
        new_edges.append((u, mid))
        new_edges.append((mid, v))
    return Graph.from_edges(g.n + g.m, new_edges)


def parse_edge_list(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative count in header", lineno)
            header = (a, b)
            continue
        if len(edges) == header[1]:
            raise GraphFormatError(f"more than {header[1]} edge lines", lineno)
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise GraphFormatError("vertex id out of range", lineno)
        if a == b:
            raise GraphFormatError("loop edge", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphFormatError("duplicate edge", lineno)
        seen.add(key)
        edges.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"expected {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def load_edge_list(stream: bytes | str | IO[bytes] | IO[str]) -> Graph:
    """Parse the ``n m`` / ``u v`` edge-list format from bytes, text or a file object."""
    if isinstance(stream, (bytes, bytearray)):
        text = bytes(stream).decode("utf-8")
    elif isinstance(stream, str):
        text = stream
    else:
        data = stream.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    return parse_edge_list(text)


def dump_edge_list(g: Graph) -> str:
    out = io.StringIO()
    out.write(f"{g.n} {g.m}\n")
    for u, v in g.edges():
        out.write(f"{u} {v}\n")
    return out.getvalue()
