"""Spanning bipartite subgraphs of a subcubic graph, improved by local exchange moves.

A :class:`Bipartition` assigns every vertex a side, ``X`` or ``Y``. Its cut edges
form the spanning bipartite subgraph ``B``; the remaining (same-side) edges are
``E_X`` and ``E_Y``. Every move flips a small set of vertices, and the engine
only applies moves that strictly raise the potential ``(cut, e1_count)`` in
lexicographic order, so any run terminates after at most ``|E|(|E|+1)`` moves.

Move family, as flip sets:

* ``Flip(v)``: ``{v}``.
* ``PairSwap(x, y)``: two adjacent bad vertices on opposite sides.
* ``TripleExchange(y; x1, x2)``: two non-adjacent bad vertices and a common
  neighbour on the other side.
* ``RewireSwap(u, v, y, y1)``: flips ``{u, v, y}`` where ``u, v`` are bad on one
  side with common neighbour ``y``; ``y1`` is the other cross neighbour of ``u``
  whose edge becomes a same-side edge with a low-degree end.
* ``CompositeFlipThenTriple(v; y; x1, x2)``: flip ``v`` (making its cross
  neighbour ``x2`` bad at no cost), then ``TripleExchange(y; x1, x2)``.

``PairSwap`` and ``TripleExchange`` are accepted only on a strict cut gain; the
other kinds on any lexicographic gain.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graph import Graph

X, Y = 0, 1


class InvariantError(RuntimeError):
    """An internal consistency check failed; the run cannot be trusted."""


class CacheDivergence(InvariantError):
    pass


class IterationBoundExceeded(InvariantError):
    pass


class StaleMove(ValueError):
    """The move's adjacency/side preconditions do not hold for this bipartition."""


class MoveKind(str, Enum):
    FLIP = "Flip"
    PAIR_SWAP = "PairSwap"
    TRIPLE_EXCHANGE = "TripleExchange"
    REWIRE_SWAP = "RewireSwap"
    COMPOSITE = "CompositeFlipThenTriple"


# scan order of find_improving_move
ALL_KINDS: tuple[MoveKind, ...] = (
    MoveKind.FLIP,
    MoveKind.PAIR_SWAP,
    MoveKind.TRIPLE_EXCHANGE,
    MoveKind.REWIRE_SWAP,
    MoveKind.COMPOSITE,
)
BASIC_KINDS: tuple[MoveKind, ...] = ALL_KINDS[:3]

_CUT_ONLY = {MoveKind.PAIR_SWAP, MoveKind.TRIPLE_EXCHANGE}


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    vertices: tuple[int, ...]

    def flip_set(self) -> tuple[int, ...]:
        if self.kind is MoveKind.REWIRE_SWAP:
            return self.vertices[:3]
        return self.vertices

    def __str__(self) -> str:
        return f"{self.kind.value}{self.vertices}"


@dataclass(frozen=True, order=True)
class Potential:
    cut: int
    e1_count: int


@dataclass
class Bipartition:
    side: list[int]
    cut_size: int = 0
    e1_count: int = 0
    generation: int = 0

    @classmethod
    def from_sides(cls, g: Graph, side: Sequence[int]) -> Bipartition:
        if len(side) != g.n or any(s not in (X, Y) for s in side):
            raise ValueError("side assignment must give X (0) or Y (1) for every vertex")
        b = cls(list(side))
        p = recount(g, b)
        b.cut_size, b.e1_count = p.cut, p.e1_count
        return b

    def potential(self) -> Potential:
        return Potential(self.cut_size, self.e1_count)

    def copy(self) -> Bipartition:
        return Bipartition(list(self.side), self.cut_size, self.e1_count, self.generation)


@dataclass
class SameSideStructure:
    e_x: list[tuple[int, int]]
    e_y: list[tuple[int, int]]
    bad: set[int]
    e1: list[tuple[int, int]]
    e2: list[tuple[int, int]]


@dataclass(frozen=True)
class TraceRecord:
    kind: str
    vertices: tuple[int, ...]
    cut_before: int
    cut_after: int
    e1_before: int
    e1_after: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind,
                "vertices": list(self.vertices),
                "cut_before": self.cut_before,
                "cut_after": self.cut_after,
                "e1_before": self.e1_before,
                "e1_after": self.e1_after,
            }
        )


@dataclass
class RepairTrace:
    """Every applied move, in order, with the potential before and after."""

    records: list[TraceRecord] = field(default_factory=list)
    repairs: int = 0

    def __len__(self) -> int:
        return len(self.records)

    def record(self, move: Move, before: Potential, after: Potential) -> None:
        self.records.append(
            TraceRecord(move.kind.value, move.vertices, before.cut, after.cut, before.e1_count, after.e1_count)
        )

    def potentials(self) -> list[Potential]:
        if not self.records:
            return []
        out = [Potential(self.records[0].cut_before, self.records[0].e1_before)]
        out.extend(Potential(r.cut_after, r.e1_after) for r in self.records)
        return out

    def to_jsonl(self) -> str:
        return "".join(r.to_json() + "\n" for r in self.records)


def move_bound(g: Graph) -> int:
    return g.m * (g.m + 1)


def is_e1_edge(g: Graph, u: int, v: int) -> bool:
    """A same-side edge counts towards E1 unless both ends have degree 3."""
    return min(len(g.adjacency[u]), len(g.adjacency[v])) <= 2


def same_side_degree(g: Graph, side: Sequence[int], v: int) -> int:
    sv = side[v]
    return sum(1 for w in g.adjacency[v] if side[w] == sv)


def is_bad(g: Graph, side: Sequence[int], v: int) -> bool:
    sv = side[v]
    return any(side[w] == sv for w in g.adjacency[v])


def recount(g: Graph, b: Bipartition) -> Potential:
    cut = e1 = 0
    for u, v in g.edges():
        if b.side[u] != b.side[v]:
            cut += 1
        elif is_e1_edge(g, u, v):
            e1 += 1
    return Potential(cut, e1)


def greedy_init(g: Graph, seed: int) -> Bipartition:
    """Place vertices in a seeded random order, each on the side holding fewer of
    its already-placed neighbours (ties go to X).

    The order is ``numpy.random.Generator(PCG64(seed)).permutation(n)``.
    """
    if seed < 0:
        raise ValueError("seed must be a non-negative 64-bit integer")
    rng = np.random.Generator(np.random.PCG64(seed))
    side = [-1] * g.n
    for v in rng.permutation(g.n).tolist():
        on_x = sum(1 for w in g.adjacency[v] if side[w] == X)
        on_y = sum(1 for w in g.adjacency[v] if side[w] == Y)
        side[v] = Y if on_y < on_x else X
    return Bipartition.from_sides(g, side)


def audit(g: Graph, b: Bipartition) -> Potential:
    if len(b.side) != g.n:
        raise ValueError("bipartition does not cover the graph")
    p = recount(g, b)
    if p != b.potential():
        raise CacheDivergence(f"cached {b.potential()} but recount gives {p}")
    return p


def same_side_structure(g: Graph, b: Bipartition) -> SameSideStructure:
    s = SameSideStructure([], [], set(), [], [])
    for u, v in g.edges():
        if b.side[u] != b.side[v]:
            continue
        (s.e_x if b.side[u] == X else s.e_y).append((u, v))
        s.bad.update((u, v))
        (s.e1 if is_e1_edge(g, u, v) else s.e2).append((u, v))
    return s


def flip_delta(g: Graph, side: Sequence[int], flips: Iterable[int]) -> tuple[int, int]:
    """Change in ``(cut, e1_count)`` if every vertex in ``flips`` switched side."""
    fs = set(flips)
    d_cut = d_e1 = 0
    for v in fs:
        for w in g.adjacency[v]:
            if w in fs:
                continue
            low = is_e1_edge(g, v, w)
            if side[v] == side[w]:
                d_cut += 1
                d_e1 -= low
            else:
                d_cut -= 1
                d_e1 += low
    return d_cut, d_e1


def _cross(g: Graph, side: Sequence[int], v: int) -> list[int]:
    sv = side[v]
    return [w for w in g.adjacency[v] if side[w] != sv]


def check_preconditions(g: Graph, b: Bipartition, m: Move) -> None:
    """Raise :class:`StaleMove` unless ``m`` is well-formed under ``b``."""
    side = b.side
    vs = m.vertices
    if any(not 0 <= v < g.n for v in vs):
        raise StaleMove(f"{m}: vertex out of range")
    if len(set(vs)) != len(vs):
        raise StaleMove(f"{m}: repeated vertex")

    def need(cond: bool, what: str) -> None:
        if not cond:
            raise StaleMove(f"{m}: {what}")

    adj = g.has_edge
    if m.kind is MoveKind.FLIP:
        need(len(vs) == 1, "expects one vertex")
    elif m.kind is MoveKind.PAIR_SWAP:
        need(len(vs) == 2, "expects two vertices")
        x, y = vs
        need(adj(x, y) and side[x] != side[y], "ends must be adjacent across the cut")
        need(is_bad(g, side, x) and is_bad(g, side, y), "both ends must be bad")
    elif m.kind is MoveKind.TRIPLE_EXCHANGE:
        need(len(vs) == 3, "expects three vertices")
        y, x1, x2 = vs
        need(side[x1] == side[x2] != side[y], "x1, x2 share a side opposite y")
        need(adj(y, x1) and adj(y, x2) and not adj(x1, x2), "y must be a common neighbour of non-adjacent x1, x2")
        need(is_bad(g, side, x1) and is_bad(g, side, x2), "x1 and x2 must be bad")
    elif m.kind is MoveKind.REWIRE_SWAP:
        need(len(vs) == 4, "expects four vertices")
        u, v, y, y1 = vs
        need(side[u] == side[v] != side[y], "u, v share a side opposite y")
        need(adj(y, u) and adj(y, v) and not adj(u, v), "y must be a common neighbour of non-adjacent u, v")
        need(is_bad(g, side, u) and is_bad(g, side, v), "u and v must be bad")
        need(adj(u, y1) and side[y1] == side[y], "y1 must be a cross neighbour of u")
    elif m.kind is MoveKind.COMPOSITE:
        need(len(vs) == 4, "expects four vertices")
        v, y, x1, x2 = vs
        need(side[v] == side[y] != side[x1] == side[x2], "v, y opposite x1, x2")
        need(adj(v, x2) and adj(y, x1) and adj(y, x2) and not adj(x1, x2), "needs path x1-y-x2-v with x1, x2 non-adjacent")
        need(is_bad(g, side, v) and is_bad(g, side, x1), "v and x1 must be bad")
    else:  # pragma: no cover
        raise StaleMove(f"unknown move kind {m.kind!r}")


def is_improving(kind: MoveKind, delta: tuple[int, int]) -> bool:
    if kind in _CUT_ONLY:
        return delta[0] > 0
    return delta > (0, 0)


def candidate_moves(g: Graph, b: Bipartition, kind: MoveKind) -> Iterator[Move]:
    """All well-formed moves of one kind, in ascending vertex order."""
    side = b.side
    bad = [is_bad(g, side, v) for v in range(g.n)]
    if kind is MoveKind.FLIP:
        for v in range(g.n):
            yield Move(kind, (v,))
    elif kind is MoveKind.PAIR_SWAP:
        for x in range(g.n):
            if bad[x]:
                for y in _cross(g, side, x):
                    if y > x and bad[y]:
                        yield Move(kind, (x, y))
    elif kind in (MoveKind.TRIPLE_EXCHANGE, MoveKind.REWIRE_SWAP):
        for y in range(g.n):
            opp = [x for x in _cross(g, side, y) if bad[x]]
            for i, x1 in enumerate(opp):
                for x2 in opp[i + 1:]:
                    if g.has_edge(x1, x2):
                        continue
                    if kind is MoveKind.TRIPLE_EXCHANGE:
                        yield Move(kind, (y, x1, x2))
                    else:
                        others = [w for w in _cross(g, side, x1) if w != y]
                        if others:
                            yield Move(kind, (x1, x2, y, others[0]))
    elif kind is MoveKind.COMPOSITE:
        for v in range(g.n):
            if not bad[v]:
                continue
            for x2 in _cross(g, side, v):
                for y in _cross(g, side, x2):
                    if y == v:
                        continue
                    for x1 in _cross(g, side, y):
                        if x1 != x2 and bad[x1] and not g.has_edge(x1, x2):
                            yield Move(kind, (v, y, x1, x2))


def find_improving_move(
    g: Graph, b: Bipartition, kinds: Sequence[MoveKind] = ALL_KINDS
) -> Move | None:
    """First move (kind-major, then ascending vertex ids) that raises the potential."""
    for kind in kinds:
        for m in candidate_moves(g, b, kind):
            if is_improving(kind, flip_delta(g, b.side, m.flip_set())):
                return m
    return None


def apply_move(g: Graph, b: Bipartition, m: Move) -> Bipartition:
    """Apply ``m`` in place and return ``b``; caches are updated incrementally."""
    check_preconditions(g, b, m)
    flips = m.flip_set()
    d_cut, d_e1 = flip_delta(g, b.side, flips)
    for v in flips:
        b.side[v] ^= 1
    b.cut_size += d_cut
    b.e1_count += d_e1
    b.generation += 1
    return b


def local_optimize(
    g: Graph,
    b: Bipartition,
    kinds: Sequence[MoveKind] = ALL_KINDS,
    trace: RepairTrace | None = None,
) -> tuple[Bipartition, RepairTrace]:
    """Apply improving moves until none of ``kinds`` applies.

    Moves are appended to ``trace`` (a fresh one if omitted); the bound on the
    total trace length is ``|E|(|E|+1)``.
    """
    trace = trace if trace is not None else RepairTrace()
    bound = move_bound(g)
    while True:
        m = find_improving_move(g, b, kinds)
        if m is None:
            return b, trace
        if len(trace) >= bound:
            raise IterationBoundExceeded(f"more than {bound} moves on a graph with {g.m} edges")
        before = b.potential()
        apply_move(g, b, m)
        trace.record(m, before, b.potential())


def fixpoint_violations(g: Graph, b: Bipartition, three_irregular: bool = False) -> list[str]:
    """Structural conditions every subcubic fixpoint must satisfy; empty when all hold."""
    out = []
    side = b.side
    for v in range(g.n):
        d = len(g.adjacency[v])
        d_b = d - same_side_degree(g, side, v)
        if 2 * d_b < d:
            out.append(f"vertex {v}: cut degree {d_b} below half of {d}")
        if same_side_degree(g, side, v) > 1:
            out.append(f"vertex {v}: {same_side_degree(g, side, v)} same-side neighbours")
    s = same_side_structure(g, b)
    for v in s.bad:
        if len(g.adjacency[v]) < 2:
            out.append(f"bad vertex {v} has degree {len(g.adjacency[v])}")
    if three_irregular:
        if s.e2:
            out.append(f"same-side edges with two degree-3 ends: {s.e2}")
        for u, v in g.edges():
            if side[u] != side[v] and u in s.bad and v in s.bad:
                out.append(f"cross edge {u}-{v} joins two bad vertices")
    return out
