"""DOT export and matplotlib figures for colorings and bench runs."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from matplotlib.figure import Figure
from matplotlib.lines import Line2D

from .coloring import Coloring
from .graph import Graph

CLASS_COLORS = ("#4C72B0", "#DD8452", "#55A868", "#C44E52", "#8172B3", "#937860")


def _class_color(c: int) -> str:
    return CLASS_COLORS[(c - 1) % len(CLASS_COLORS)] if c > 0 else "#BBBBBB"


def to_dot(g: Graph, coloring: Coloring | None = None, dashed: Iterable[tuple[int, int]] = ()) -> str:
    """Graphviz source; vertices filled by class, ``dashed`` edges drawn dashed."""
    dash = {(min(u, v), max(u, v)) for u, v in dashed}
    lines = ["graph G {", '  node [shape=circle, style=filled, fontname="Helvetica"];']
    for v in range(g.n):
        if coloring is None:
            lines.append(f"  {v};")
        else:
            c = coloring.assignment[v]
            lines.append(f'  {v} [fillcolor="{_class_color(c)}", label="{v}\\n{c}"];')
    for u, v in g.edges():
        style = " [style=dashed]" if (u, v) in dash else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def circular_layout(n: int) -> list[tuple[float, float]]:
    return [(math.cos(2 * math.pi * k / max(n, 1)), math.sin(2 * math.pi * k / max(n, 1))) for k in range(n)]


def coloring_figure(
    g: Graph,
    coloring: Coloring,
    path: str,
    dashed: Iterable[tuple[int, int]] = (),
    title: str | None = None,
) -> None:
    dash = {(min(u, v), max(u, v)) for u, v in dashed}
    pos = circular_layout(g.n)
    fig = Figure(figsize=(5, 5))
    ax = fig.add_subplot()
    for u, v in g.edges():
        (x0, y0), (x1, y1) = pos[u], pos[v]
        ax.plot([x0, x1], [y0, y1], color="0.4", lw=1, ls="--" if (u, v) in dash else "-", zorder=1)
    xs = [p[0] for p in pos]
    ys = [p[1] for p in pos]
    ax.scatter(xs, ys, s=260, c=[_class_color(c) for c in coloring.assignment], edgecolors="k", zorder=2)
    for v, (x, y) in enumerate(pos):
        ax.text(x, y, str(v), ha="center", va="center", fontsize=7, zorder=3)
    handles = [
        Line2D([], [], marker="o", ls="", color=_class_color(i), label=f"class {i} (s={s})")
        for i, s in enumerate(coloring.sequence.s, start=1)
    ]
    ax.legend(handles=handles, loc="upper right", fontsize=7, frameon=False)
    ax.set_aspect("equal")
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=120, bbox_inches="tight")


def bench_figure(rows: Sequence[dict], path: str) -> None:
    """Moves vs. edge count and wall-time histogram for the rows of a bench run."""
    fig = Figure(figsize=(9, 3.6))
    ax_moves, ax_ms = fig.subplots(1, 2)
    done = [r for r in rows if r.get("moves") not in (None, "")]
    for mode, marker in (("t1", "o"), ("t2", "s")):
        pts = [r for r in done if r["mode"] == mode]
        if not pts:
            continue
        ax_moves.scatter(
            [r["m"] for r in pts],
            [r["moves"] for r in pts],
            marker=marker,
            s=18,
            alpha=0.7,
            c=["C0" if r["verified"] == "true" else "C3" for r in pts],
            label=mode,
        )
    if done:
        top = max(r["m"] for r in done)
        grid = list(range(top + 1))
        ax_moves.plot(grid, [m * (m + 1) for m in grid], color="0.6", lw=1, label="|E|(|E|+1)")
        ax_moves.set_ylim(0, max(max(r["moves"] for r in done) * 1.3, 1))
        ax_moves.legend(fontsize=8, frameon=False)
        ax_ms.hist([r["ms"] for r in done], bins=min(30, max(len(done) // 3, 1)), color="C0")
    ax_moves.set_xlabel("edges")
    ax_moves.set_ylabel("moves applied")
    ax_ms.set_xlabel("wall time (ms)")
    ax_ms.set_ylabel("runs")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
