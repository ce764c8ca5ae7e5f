"""``packcolor`` command line.

Exit codes: 0 ok, 1 domain negative (invalid / not colorable / class
mismatch), 2 oracle budget exhausted, 3 internal invariant failure, 4 usage or
I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .bipartition import InvariantError, same_side_structure
from .colorer import ClassMismatch, Mode, check_class, run
from .coloring import Coloring, PackingSequence
from .generators import GENERATORS, GenSpec, GenerationError, generate
from .graph import Graph, GraphFormatError, dump_edge_list, is_3_irregular, is_i_saturated, is_subcubic, load_edge_list
from .oracle import Status, BudgetExceeded, exact_colorable, min_packing_k, verify_coloring

OK, NEGATIVE, BUDGET, INVARIANT, USAGE = 0, 1, 2, 3, 4

BENCH_HEADER = ["name", "n", "m", "mode", "moves", "repairs", "ms", "verified"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return value


def _sequence(text: str) -> PackingSequence:
    try:
        return PackingSequence.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def read_graph(path: str) -> Graph:
    """Edge-list file, ``-`` for stdin, or ``named:KEY`` for a corpus graph."""
    if path.startswith("named:"):
        try:
            return generate(GenSpec("named", name=path[len("named:"):]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return load_edge_list(_read_text(path))


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _dump_failure(exc: InvariantError, path: str | None) -> str:
    payload = getattr(exc, "certificate", {"reason": str(exc)})
    if path is None:
        fd, path = tempfile.mkstemp(prefix="packcolor-failure-", suffix=".json")
        os.close(fd)
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def cmd_color(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    try:
        r = run(g, args.mode, args.seed, force=args.force)
    except ClassMismatch as exc:
        print(f"class mismatch: {exc}", file=sys.stderr)
        return NEGATIVE
    except InvariantError as exc:
        where = _dump_failure(exc, args.dump)
        print(f"invariant failure: {exc}; dump written to {where}", file=sys.stderr)
        return INVARIANT
    # every coloring leaving the process is re-verified here
    if not verify_coloring(g, r.coloring.sequence, r.coloring).valid:
        print("invariant failure: emitted coloring does not verify", file=sys.stderr)
        return INVARIANT
    _write(args.out, r.coloring.to_json())
    if args.trace:
        _write(args.trace, r.trace.to_jsonl())
    return OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    try:
        data = json.loads(_read_text(args.coloring))
        seq = args.sequence or PackingSequence(tuple(data["sequence"]))
        if len(data["classes"]) > len(seq):
            raise UsageError(f"sequence {seq} shorter than the {len(data['classes'])} classes")
        if int(data["n"]) != g.n:
            raise UsageError(f"coloring is for {data['n']} vertices, graph has {g.n}")
        c = Coloring.from_dict(data, seq)
        verdict = verify_coloring(g, seq, c)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad coloring: {exc}") from None
    print(json.dumps(verdict.to_dict()))
    return OK if verdict.valid else NEGATIVE


def class_report(g: Graph) -> dict:
    sub = is_subcubic(g)
    return {
        "n": g.n,
        "m": g.m,
        "max_degree": g.max_degree(),
        "subcubic": sub,
        "3_irregular": is_3_irregular(g),
        "saturated": {str(i): is_i_saturated(g, i) for i in range(4)} if sub else None,
    }


def cmd_check(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    print(json.dumps(class_report(g)))
    if args.mode:
        try:
            check_class(g, args.mode)
        except ClassMismatch as exc:
            print(f"class mismatch: {exc}", file=sys.stderr)
            return NEGATIVE
    return OK


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        g = generate(GenSpec(args.kind, args.n, args.seed, args.name))
    except (ValueError, GenerationError) as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, dump_edge_list(g))
    return OK


def cmd_oracle(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    if args.packing_k is not None:
        try:
            k = min_packing_k(g, args.packing_k, args.budget)
        except BudgetExceeded as exc:
            print(json.dumps({"status": Status.BUDGET.value, "detail": str(exc)}))
            return BUDGET
        print(json.dumps({"status": "yes" if k else "no", "packing_k": k}))
        return OK if k else NEGATIVE
    res = exact_colorable(g, args.sequence, args.budget)
    report = {"status": res.status.value, "sequence": list(args.sequence.s), "nodes": res.nodes}
    if res.coloring is not None:
        report["coloring"] = res.coloring.to_dict()
    print(json.dumps(report))
    return {Status.YES: OK, Status.NO: NEGATIVE, Status.BUDGET: BUDGET}[res.status]


def bench_one(path: str, mode: str, seed: int) -> dict:
    name = f"{Path(path).stem}@{seed}"
    row: dict = {"name": name, "n": "", "m": "", "mode": mode, "moves": "", "repairs": "", "ms": "", "verified": "error"}
    try:
        g = read_graph(path)
    except (OSError, GraphFormatError, UnicodeDecodeError):
        return row
    row.update(n=g.n, m=g.m)
    t0 = time.perf_counter()
    try:
        r = run(g, mode, seed)
    except ClassMismatch:
        row["verified"] = "class-mismatch"
        return row
    except InvariantError:
        row["verified"] = "false"
        return row
    ms = (time.perf_counter() - t0) * 1000
    ok = verify_coloring(g, r.coloring.sequence, r.coloring).valid
    row.update(moves=len(r.trace), repairs=r.trace.repairs, ms=round(ms, 3), verified="true" if ok else "false")
    return row


def cmd_bench(args: argparse.Namespace) -> int:
    root = Path(args.corpus)
    if not root.is_dir():
        raise UsageError(f"{root} is not a directory")
    files = sorted(p for p in root.iterdir() if p.is_file() and not p.name.startswith("."))
    jobs = [(str(p), args.mode, s) for p in files for s in range(args.seeds)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(bench_one, *zip(*jobs)))
    else:
        rows = [bench_one(*j) for j in jobs]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write(args.csv, buf.getvalue())
    print(_table(rows), file=sys.stderr)
    if args.figure:
        from .report import bench_figure

        bench_figure(rows, args.figure)
    return OK if all(r["verified"] == "true" for r in rows) else NEGATIVE


def _table(rows: Sequence[dict]) -> str:
    widths = {h: max([len(h)] + [len(str(r[h])) for r in rows]) for h in BENCH_HEADER}
    out = ["  ".join(h.ljust(widths[h]) for h in BENCH_HEADER)]
    out += ["  ".join(str(r[h]).ljust(widths[h]) for h in BENCH_HEADER) for r in rows]
    ok = sum(r["verified"] == "true" for r in rows)
    out.append(f"{ok}/{len(rows)} verified")
    return "\n".join(out)


def cmd_dot(args: argparse.Namespace) -> int:
    from .report import coloring_figure, to_dot

    g = read_graph(args.graph)
    dashed: list[tuple[int, int]] = []
    if args.coloring:
        try:
            coloring = Coloring.from_json(_read_text(args.coloring))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad coloring: {exc}") from None
        if coloring.n != g.n:
            raise UsageError(f"coloring is for {coloring.n} vertices, graph has {g.n}")
    else:
        try:
            r = run(g, args.mode, args.seed, force=args.force)
        except ClassMismatch as exc:
            print(f"class mismatch: {exc}", file=sys.stderr)
            return NEGATIVE
        except InvariantError as exc:
            print(f"invariant failure: {exc}; dump written to {_dump_failure(exc, None)}", file=sys.stderr)
            return INVARIANT
        coloring = r.coloring
        s = same_side_structure(g, r.bipartition)
        dashed = s.e_x + s.e_y
    _write(args.out, to_dot(g, coloring, dashed))
    if args.png:
        coloring_figure(g, coloring, args.png, dashed, title=f"{coloring.sequence}-packing coloring")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="packcolor", description="(1,1,3)/(1,1,2)-packing colorings of subcubic graphs")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("color", help="color a graph via the bipartition local search")
    c.add_argument("graph", help="edge-list file, '-' for stdin, or named:KEY")
    c.add_argument("--mode", choices=[m.value for m in Mode], required=True)
    c.add_argument("--seed", type=_seed, default=0)
    c.add_argument("--force", action="store_true", help="skip the class check")
    c.add_argument("--out", help="coloring JSON (default stdout)")
    c.add_argument("--trace", help="write the move trace as JSON lines")
    c.add_argument("--dump", help="where to write a failure certificate")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a coloring JSON against a graph")
    v.add_argument("graph")
    v.add_argument("coloring")
    v.add_argument("--sequence", type=_sequence, help="override the sequence stored in the coloring")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("check", help="report degree-class membership")
    k.add_argument("graph")
    k.add_argument("--mode", choices=[m.value for m in Mode], help="exit 1 unless the graph fits this mode")
    k.set_defaults(func=cmd_check)

    gn = sub.add_parser("gen", help="emit a generated or named graph as an edge list")
    gn.add_argument("kind", choices=GENERATORS)
    gn.add_argument("--n", type=int, default=0, help="vertex count / base size / number of degree-3 pairs")
    gn.add_argument("--seed", type=_seed, default=0)
    gn.add_argument("--name", help="corpus key for kind 'named'")
    gn.add_argument("--out")
    gn.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="exact colorability by backtracking")
    o.add_argument("graph")
    grp = o.add_mutually_exclusive_group()
    grp.add_argument("--sequence", type=_sequence, default=PackingSequence((1, 1, 3)))
    grp.add_argument("--packing-k", type=int, metavar="KMAX", help="smallest k with a (1..k)-packing coloring")
    o.add_argument("--budget", type=int, default=1_000_000, help="node expansion limit")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="color every edge-list file in a directory")
    b.add_argument("corpus")
    b.add_argument("--mode", choices=[m.value for m in Mode], required=True)
    b.add_argument("--seeds", type=int, default=1)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--csv", help="CSV output (default stdout)")
    b.add_argument("--figure", help="render a PNG summary figure")
    b.set_defaults(func=cmd_bench)

    d = sub.add_parser("dot", help="Graphviz export of a coloring")
    d.add_argument("graph")
    d.add_argument("--coloring", help="existing coloring JSON; otherwise one is computed")
    d.add_argument("--mode", choices=[m.value for m in Mode], default="t1")
    d.add_argument("--seed", type=_seed, default=0)
    d.add_argument("--force", action="store_true")
    d.add_argument("--out")
    d.add_argument("--png", help="also draw the coloring with matplotlib")
    d.set_defaults(func=cmd_dot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else USAGE
    if getattr(args, "seeds", 1) < 0 or getattr(args, "jobs", 1) < 1:
        print("packcolor: error: --seeds must be >= 0 and --jobs >= 1", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"packcolor: error: {exc}", file=sys.stderr)
        return USAGE
    except (OSError, UnicodeDecodeError, GraphFormatError, json.JSONDecodeError) as exc:
        print(f"packcolor: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
