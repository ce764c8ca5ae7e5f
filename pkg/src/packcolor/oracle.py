"""Ground truth for S-packing colorings.

``verify_coloring`` checks a given coloring with truncated BFS per class.
``exact_colorable`` decides colorability by backtracking on small graphs, and
``naive_colorable`` is a deliberately dumb ``k**n`` enumeration over a
Floyd-Warshall distance table, used only to cross-check the backtracker.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .coloring import Coloring, PackingSequence
from .graph import Graph, bfs_distances, first_close_pair


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Violation:
    class_index: int
    u: int
    v: int
    distance: int


@dataclass(frozen=True)
class Verdict:
    valid: bool
    violation: Violation | None = None

    def to_dict(self) -> dict:
        out: dict = {"valid": self.valid}
        if self.violation is not None:
            w = self.violation
            out["violation"] = {"class": w.class_index, "u": w.u, "v": w.v, "distance": w.distance}
        return out


def verify_coloring(g: Graph, s: PackingSequence, c: Coloring) -> Verdict:
    """Check every class ``i`` for two members closer than ``s_i + 1``.

    The first offending ``(i, u, v)`` in lexicographic order is reported.
    """
    if c.n != g.n or any(x == 0 for x in c.assignment):
        raise ValueError("partial coloring")
    if any(not 1 <= x <= len(s) for x in c.assignment):
        raise ValueError("class index out of range")
    for i, members in enumerate(c.classes()[: len(s)], start=1):
        hit = first_close_pair(g, members, s[i - 1])
        if hit is not None:
            return Verdict(False, Violation(i, *hit))
    return Verdict(True)


class Status(str, Enum):
    YES = "yes"
    NO = "no"
    BUDGET = "budget-exceeded"


@dataclass(frozen=True)
class OracleResult:
    status: Status
    coloring: Coloring | None = None
    nodes: int = 0


def exact_colorable(g: Graph, s: PackingSequence, budget: int = 1_000_000) -> OracleResult:
    """Backtracking search for an ``s``-packing coloring of ``g``.

    Vertices are taken by descending degree. ``blocked[i][w]`` counts class-``i``
    members within distance ``s_i`` of ``w``. Among empty classes with equal
    ``s_i`` only the lowest-indexed one is tried.
    """
    n, k = g.n, len(s)
    order = sorted(range(n), key=lambda v: (-len(g.adjacency[v]), v))
    blocked = [[0] * n for _ in range(k)]
    size = [0] * k
    assign = [0] * n
    balls: dict[tuple[int, int], list[int]] = {}
    nodes = 0

    def ball(v: int, r: int) -> list[int]:
        key = (v, r)
        if key not in balls:
            balls[key] = list(bfs_distances(g, v, r))
        return balls[key]

    def extend(idx: int) -> bool:
        nonlocal nodes
        if idx == n:
            return True
        v = order[idx]
        tried_empty: set[int] = set()
        for i in range(k):
            if blocked[i][v]:
                continue
            if size[i] == 0:
                if s[i] in tried_empty:
                    continue
                tried_empty.add(s[i])
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded
            reach = ball(v, s[i])
            for w in reach:
                blocked[i][w] += 1
            size[i] += 1
            assign[v] = i + 1
            if extend(idx + 1):
                return True
            for w in reach:
                blocked[i][w] -= 1
            size[i] -= 1
            assign[v] = 0
        return False

    try:
        found = extend(0)
    except BudgetExceeded:
        return OracleResult(Status.BUDGET, None, nodes)
    if not found:
        return OracleResult(Status.NO, None, nodes)
    witness = Coloring(tuple(assign), s)
    if not verify_coloring(g, s, witness).valid:
        raise AssertionError("backtracking produced a coloring the verifier rejects")
    return OracleResult(Status.YES, witness, nodes)


def min_packing_k(g: Graph, k_max: int, budget: int = 1_000_000) -> int | None:
    """Smallest ``k <= k_max`` with a ``(1, 2, ..., k)``-packing coloring, else None.

    Raises :class:`BudgetExceeded` if any single search runs out of budget.
    """
    for k in range(1, k_max + 1):
        res = exact_colorable(g, PackingSequence.packing(k), budget)
        if res.status is Status.BUDGET:
            raise BudgetExceeded(f"budget {budget} exhausted at k={k}")
        if res.status is Status.YES:
            return k
    return None


def all_pairs_distances(g: Graph) -> list[list[float]]:
    n = g.n
    inf = float("inf")
    d = [[0.0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in g.edges():
        d[u][v] = d[v][u] = 1.0
    for w in range(n):
        dw = d[w]
        for i in range(n):
            di = d[i]
            via = di[w]
            if via == inf:
                continue
            for j in range(n):
                if via + dw[j] < di[j]:
                    di[j] = via + dw[j]
    return d


def naive_colorable(g: Graph, s: PackingSequence) -> bool:
    """Try all ``k**n`` assignments; only for tiny graphs."""
    d = all_pairs_distances(g)
    n, k = g.n, len(s)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for assign in itertools.product(range(k), repeat=n):
        if all(assign[u] != assign[v] or d[u][v] >= s[assign[u]] + 1 for u, v in pairs):
            return True
    return False
