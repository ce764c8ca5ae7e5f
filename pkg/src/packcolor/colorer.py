"""Three-class packing colorings from a locally optimal bipartition.

Pipeline for one graph:

1. seed a bipartition greedily and run the Flip/PairSwap/TripleExchange local
   search to a fixpoint;
2. pick one end of every same-side edge into ``T``;
3. check that ``T`` is spread out (distance >= 4 in ``t1`` mode, >= 3 in ``t2``);
4. if not, turn the offending pair into a composite move that raises the
   potential, apply it and go back to 1;
5. color ``X - T``, ``Y - T`` and ``T`` with classes 1, 2, 3.

``t1`` targets 3-irregular subcubic graphs with sequence (1,1,3); ``t2``
targets 1-saturated subcubic graphs with sequence (1,1,2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .bipartition import (
    BASIC_KINDS,
    Bipartition,
    InvariantError,
    IterationBoundExceeded,
    Move,
    MoveKind,
    RepairTrace,
    SameSideStructure,
    StaleMove,
    X,
    Y,
    apply_move,
    audit,
    check_preconditions,
    flip_delta,
    greedy_init,
    is_improving,
    local_optimize,
    move_bound,
    same_side_structure,
)
from .coloring import S112, S113, Coloring, PackingSequence
from .graph import Graph, bfs_distances, dump_edge_list, first_close_pair, is_3_irregular, is_i_saturated, is_subcubic
from .oracle import verify_coloring


class Mode(str, Enum):
    T1 = "t1"
    T2 = "t2"

    @property
    def threshold(self) -> int:
        return 4 if self is Mode.T1 else 3

    @property
    def sequence(self) -> PackingSequence:
        return S113 if self is Mode.T1 else S112


class ClassMismatch(ValueError):
    pass


class TSetError(InvariantError):
    pass


class UnmatchedViolation(InvariantError):
    """A T-distance violation that none of the repair cases explains."""


@dataclass(frozen=True)
class PairViolation:
    u: int
    v: int
    distance: int


@dataclass
class TSet:
    members: set[int] = field(default_factory=set)
    provenance: dict[int, tuple[int, int]] = field(default_factory=dict)

    def add(self, v: int, edge: tuple[int, int]) -> None:
        self.members.add(v)
        self.provenance[v] = edge


def _degree_two_end(g: Graph, edge: tuple[int, int]) -> int | None:
    ends = [w for w in edge if len(g.adjacency[w]) == 2]
    return min(ends) if ends else None


def build_t_3irregular(g: Graph, s: SameSideStructure) -> TSet:
    t = TSet()
    for edge in sorted(s.e_x + s.e_y):
        end = _degree_two_end(g, edge)
        if end is None:
            raise TSetError(f"no degree-2 end on same-side edge {edge}")
        t.add(end, edge)
    return t


def build_t_1saturated(g: Graph, s: SameSideStructure, e2_end: str = "low") -> TSet:
    """Degree-2 end of every E1 edge; the lower (or, with ``e2_end="high"``,
    higher) id end of every E2 edge."""
    if e2_end not in ("low", "high"):
        raise ValueError("e2_end must be 'low' or 'high'")
    t = TSet()
    for edge in sorted(s.e1):
        end = _degree_two_end(g, edge)
        if end is None:
            raise TSetError(f"E1 edge {edge} with no degree-2 end")
        t.add(end, edge)
    for edge in sorted(s.e2):
        t.add(min(edge) if e2_end == "low" else max(edge), edge)
    return t


def check_t_distances(g: Graph, t: TSet, threshold: int) -> PairViolation | None:
    hit = first_close_pair(g, t.members, threshold - 1)
    return None if hit is None else PairViolation(*hit)


def _improves(g: Graph, b: Bipartition, m: Move) -> bool:
    try:
        check_preconditions(g, b, m)
    except StaleMove:
        return False
    return is_improving(m.kind, flip_delta(g, b.side, m.flip_set()))


def _cross_common_path(g: Graph, side: list[int], c: int, a: int) -> list[tuple[int, int]]:
    """All ``(y, x)`` with path ``c - y - x - a``, ``y`` across from ``c`` and ``x`` across from ``a``."""
    out = []
    for y in g.adjacency[c]:
        if side[y] == side[c]:
            continue
        for x in g.adjacency[y]:
            if x != c and side[x] == side[c] and g.has_edge(x, a):
                out.append((y, x))
    return sorted(out)


def diagnose_violation(g: Graph, b: Bipartition, t: TSet, v: PairViolation, mode: Mode | str) -> Move:
    """Map a T-distance violation at a fixpoint to a move that raises the potential.

    ``t1``: members on opposite sides at distance 3, joined by ``u - y - x - v``,
    give ``CompositeFlipThenTriple(v; y; u, x)``; the Y-side member is flipped
    first. ``t2``: members on one side with a common neighbour ``y`` give
    ``RewireSwap(u, v, y, y1)``. Anything else raises :class:`UnmatchedViolation`.
    """
    mode = Mode(mode)
    u, w = v.u, v.v
    side = b.side
    d = bfs_distances(g, u, 3).get(w)
    if mode is Mode.T1 and d == 3 and side[u] != side[w]:
        for a, c in sorted([(u, w), (w, u)], key=lambda p: side[p[0]] != Y):
            for y, x in _cross_common_path(g, side, c, a):
                m = Move(MoveKind.COMPOSITE, (a, y, c, x))
                if _improves(g, b, m):
                    return m
    if mode is Mode.T2 and d == 2 and side[u] == side[w]:
        for p, q in ((u, w), (w, u)):
            for y in g.adjacency[p]:
                if side[y] == side[p] or not g.has_edge(y, q):
                    continue
                others = [z for z in g.adjacency[p] if side[z] != side[p] and z != y]
                for y1 in others:
                    m = Move(MoveKind.REWIRE_SWAP, (p, q, y, y1))
                    if _improves(g, b, m):
                        return m
    raise UnmatchedViolation(f"{mode.value}: no repair case matches T-pair ({u}, {w}) at distance {d}")


@dataclass
class ColoringRun:
    coloring: Coloring
    trace: RepairTrace
    bipartition: Bipartition
    tset: TSet


def check_class(g: Graph, mode: Mode | str) -> None:
    mode = Mode(mode)
    if not is_subcubic(g):
        raise ClassMismatch("not subcubic")
    if mode is Mode.T1 and not is_3_irregular(g):
        raise ClassMismatch("not 3-irregular")
    if mode is Mode.T2 and not is_i_saturated(g, 1):
        raise ClassMismatch("not 1-saturated")


def certificate(g: Graph, b: Bipartition, trace: RepairTrace, mode: Mode, reason: str) -> dict:
    return {
        "reason": reason,
        "mode": mode.value,
        "graph": dump_edge_list(g),
        "side": ["X" if s == X else "Y" for s in b.side],
        "trace": [r.to_json() for r in trace.records],
    }


FixpointHook = Callable[[Graph, Bipartition], None]


def run(
    g: Graph,
    mode: Mode | str,
    seed: int = 0,
    force: bool = False,
    e2_end: str = "low",
    on_fixpoint: FixpointHook | None = None,
) -> ColoringRun:
    """Full pipeline; see the module docstring.

    ``on_fixpoint`` is called with every local-search fixpoint reached. Any
    :class:`InvariantError` raised carries a ``certificate`` attribute with the
    graph, the current sides and the trace so far.
    """
    mode = Mode(mode)
    if not force:
        check_class(g, mode)
    b = greedy_init(g, seed)
    trace = RepairTrace()
    try:
        while True:
            local_optimize(g, b, BASIC_KINDS, trace)
            if on_fixpoint is not None:
                on_fixpoint(g, b)
            s = same_side_structure(g, b)
            if mode is Mode.T1:
                if s.e2:
                    raise InvariantError(f"same-side edges with two degree-3 ends in t1 mode: {s.e2}")
                t = build_t_3irregular(g, s)
            else:
                t = build_t_1saturated(g, s, e2_end)
            viol = check_t_distances(g, t, mode.threshold)
            if viol is None:
                break
            m = diagnose_violation(g, b, t, viol, mode)
            if len(trace) >= move_bound(g):
                raise IterationBoundExceeded(f"more than {move_bound(g)} moves on a graph with {g.m} edges")
            before = b.potential()
            apply_move(g, b, m)
            if not b.potential() > before:
                raise InvariantError(f"repair {m} did not raise the potential")
            trace.record(m, before, b.potential())
            trace.repairs += 1
        audit(g, b)
        classes: list[list[int]] = [[], [], []]
        for v in range(g.n):
            classes[2 if v in t.members else b.side[v]].append(v)
        coloring = Coloring.from_classes(g.n, classes, mode.sequence)
        verdict = verify_coloring(g, mode.sequence, coloring)
        if not verdict.valid:
            raise InvariantError(f"assembled coloring fails verification: {verdict.violation}")
    except InvariantError as exc:
        exc.certificate = certificate(g, b, trace, mode, str(exc))  # type: ignore[attr-defined]
        raise
    return ColoringRun(coloring, trace, b, t)


def color(g: Graph, mode: Mode | str, seed: int = 0, force: bool = False) -> tuple[Coloring, RepairTrace]:
    r = run(g, mode, seed, force)
    return r.coloring, r.trace
