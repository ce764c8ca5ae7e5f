"""Seeded instance generators and the named graph corpus.

All randomness comes from ``numpy.random.Generator(numpy.random.PCG64(seed))``,
so a ``(kind, n, seed)`` triple always yields the same edge list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import Graph, subdivide


class GenerationError(RuntimeError):
    pass


def make_rng(seed: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be a non-negative 64-bit integer")
    return np.random.Generator(np.random.PCG64(seed))


def gen_random_subcubic(n: int, seed: int) -> Graph:
    """Random subcubic graph from ``3n`` uniform pair proposals.

    A proposed pair becomes an edge when it is not one already and both ends
    still have degree below 3.
    """
    rng = make_rng(seed)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    edges = []
    if n >= 2:
        for _ in range(3 * n):
            u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
            if v in nbrs[u] or len(nbrs[u]) >= 3 or len(nbrs[v]) >= 3:
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
            edges.append((u, v))
    return Graph.from_edges(n, edges)


def gen_3_irregular(n_base: int, seed: int) -> Graph:
    return subdivide(gen_random_subcubic(n_base, seed))


def subdivide_except(g: Graph, keep: Iterable[tuple[int, int]]) -> Graph:
    """Subdivide every edge of ``g`` not listed in ``keep``.

    Midpoints are appended in lexicographic order of the subdivided edges.
    """
    kept = {(min(u, v), max(u, v)) for u, v in keep}
    edges = []
    mid = g.n
    for u, v in g.edges():
        if (u, v) in kept:
            edges.append((u, v))
        else:
            edges.append((u, mid))
            edges.append((mid, v))
            mid += 1
    return Graph.from_edges(mid, edges)


def _pair_stubs(n_pairs: int, rng: np.random.Generator) -> tuple[int, list[tuple[int, int]]] | None:
    n_free = int(rng.integers(0, 2 * n_pairs + 1))
    n = 2 * n_pairs + n_free
    matched = {(2 * i, 2 * i + 1) for i in range(n_pairs)}
    edges = set(matched)

    def ok(a: int, b: int) -> bool:
        return a != b and (min(a, b), max(a, b)) not in edges

    # matched vertices must end with degree exactly 3, free ones at most 2
    must = [v for v in range(2 * n_pairs) for _ in range(2)]
    optional = [f for f in range(2 * n_pairs, n) for _ in range(int(rng.integers(1, 3)))]
    must = [must[i] for i in rng.permutation(len(must))]
    optional = [optional[i] for i in rng.permutation(len(optional))]
    while must:
        a = must.pop()
        pool = must + optional
        admissible = [k for k, b in enumerate(pool) if ok(a, b)]
        if not admissible:
            return None
        k = admissible[int(rng.integers(len(admissible)))]
        b = pool[k]
        if k < len(must):
            must.pop(k)
        else:
            optional.pop(k - len(must))
        edges.add((min(a, b), max(a, b)))
    for a, b in zip(optional[::2], optional[1::2]):
        if ok(a, b):
            edges.add((min(a, b), max(a, b)))
    return n, sorted(edges)


def gen_1_saturated(n_pairs: int, seed: int, max_retries: int = 200) -> Graph:
    """Random 1-saturated subcubic graph built around ``n_pairs`` adjacent degree-3 pairs.

    The base graph has the pairs ``(2i, 2i+1)`` as a perfect matching on its
    degree-3 vertices, two more random edges per matched vertex (each drawn
    uniformly among stubs that keep the graph simple; a dead end restarts the
    draw), and up to ``2 * n_pairs`` free vertices of degree at most 2. Every
    base edge outside the matching is then subdivided, so each degree-3 vertex keeps exactly its
    partner as a degree-3 neighbour.
    """
    if n_pairs < 0:
        raise ValueError("n_pairs must be non-negative")
    rng = make_rng(seed)
    for _ in range(max_retries):
        drawn = _pair_stubs(n_pairs, rng)
        if drawn is None:
            continue
        n, edges = drawn
        base = Graph.from_edges(n, edges)
        return subdivide_except(base, [(2 * i, 2 * i + 1) for i in range(n_pairs)])
    raise GenerationError(f"generation failed after {max_retries} retries")


def _cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    """Outer 5-cycle ``0..4``, spokes ``i -- i+5``, inner pentagram on ``5..9``."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def prism() -> Graph:
    """Triangles ``0 1 2`` and ``3 4 5`` joined by ``i -- i+3``."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def cube_q3() -> Graph:
    return Graph.from_edges(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def _corpus() -> dict[str, object]:
    table: dict[str, object] = {
        "K4": lambda: complete(4),
        "petersen": petersen,
        "prism": prism,
        "cube-q3": cube_q3,
        "subdivided-k4": lambda: subdivide(complete(4)),
        "subdivided-petersen": lambda: subdivide(petersen()),
    }
    for k in range(3, 13):
        table[f"C{k}"] = lambda k=k: _cycle(k)
    for k in range(2, 13):
        table[f"P{k}"] = lambda k=k: _path(k)
    return table


CORPUS = _corpus()
CORPUS_KEYS = tuple(CORPUS)


def named(name: str) -> Graph:
    """Fixed corpus graph. ``Ck`` and ``Pk`` have ``k`` vertices numbered along the cycle/path."""
    try:
        return CORPUS[name]()  # type: ignore[operator]
    except KeyError:
        raise KeyError(f"unknown corpus key {name!r}; choose from {', '.join(CORPUS_KEYS)}") from None


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int = 0
    seed: int = 0
    name: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in GENERATORS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.kind == "named" and self.name not in CORPUS:
            raise ValueError(f"named generator needs a corpus key, got {self.name!r}")


GENERATORS = ("random-subcubic", "irregular-3", "saturated-1", "named")


def generate(spec: GenSpec) -> Graph:
    if spec.kind == "random-subcubic":
        return gen_random_subcubic(spec.n, spec.seed)
    if spec.kind == "irregular-3":
        return gen_3_irregular(spec.n, spec.seed)
    if spec.kind == "saturated-1":
        return gen_1_saturated(spec.n, spec.seed)
    return named(spec.name or "")
