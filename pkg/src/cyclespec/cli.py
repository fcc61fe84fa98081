"""Command-line front end.

Exit codes: 0 success or verified, 1 counterexample found, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import constructions as C
from .enumeration import ENUM_CAP
from .graph import Graph, GraphError, bipartition, block_decomposition, build_graph, is_connected, vertex_connectivity
from .graph6 import Graph6Error, parse_graph6, write_graph6
from .report import render
from .spectrum import SPECTRUM_LIMIT, best_progression, cycle_spectrum, residue_coverage
from .turan import TURAN_CAP, max_edges_without, turan_table
from .verify import REGISTRY, UnknownSpec, verify_theorem


class UsageError(Exception):
    pass


def make_named(name: str) -> C.MarkedGraph:
    """Build a graph from a generator name such as ``hypo:{1,3}`` or ``kst:3,4,minus``."""
    head, _, arg = name.partition(":")
    head = head.strip().lower()

    def ints(text):
        text = text.strip().strip("{}").strip()
        if not text:
            return []
        try:
            return [int(t) for t in text.split(",")]
        except ValueError:
            raise UsageError(f"bad parameters {text!r} for {head}") from None

    try:
        if head == "petersen" and not arg:
            # same labelling as the unsplit hypo-Petersen graph
            return C.MarkedGraph(C.hypo_petersen(()))
        if head == "hypo":
            return C.MarkedGraph(C.hypo_petersen(ints(arg)))
        if head == "f":
            (r,) = ints(arg)
            return C.f_graph(r)
        if head == "l":
            (i,) = ints(arg)
            return C.l_construction(i)
        if head == "kst":
            parts = [t.strip() for t in arg.split(",")]
            minus = parts[-1] == "minus"
            if minus:
                parts = parts[:-1]
            s, t = ints(",".join(parts))
            return C.MarkedGraph(C.complete_bipartite(s, t, minus))
        if head == "theta":
            a, b, c = ints(arg)
            return C.theta_graph(a, b, c)
        if head == "complete":
            (n,) = ints(arg)
            return C.MarkedGraph(C.complete(n))
        if head == "cycle":
            (n,) = ints(arg)
            return C.MarkedGraph(C.cycle(n))
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    except ValueError:
        raise UsageError(f"bad parameters for {head}: {arg!r}") from None
    raise UsageError(f"unknown generator name {name!r}")


_NAMED = re.compile(r"^(petersen|hypo:.*|f:.*|l:.*|kst:.*|theta:.*|complete:.*|cycle:.*)$", re.I)


def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    offset = 0
    try:
        n, m = (int(t) for t in lines[0].split())
        edges = []
        for ln in lines[1 : m + 1]:
            u, v = (int(t) for t in ln.split())
            edges.append((u, v))
    except (ValueError, IndexError):
        idx = text.find(lines[0]) if lines else 0
        raise Graph6Error("malformed edge list", offset + max(idx, 0)) from None
    if len(edges) != m:
        raise Graph6Error(f"expected {m} edges, found {len(edges)}", len(text))
    return build_graph(n, edges)


def read_input(spec: str) -> C.MarkedGraph:
    if os.path.exists(spec):
        with open(spec) as fh:
            text = fh.read()
        first = next((ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), "")
        if re.fullmatch(r"\s*\d+\s+\d+\s*", first):
            return C.MarkedGraph(parse_edge_list(text))
        return C.MarkedGraph(parse_graph6(first.strip()))
    if _NAMED.match(spec.strip()):
        return make_named(spec.strip())
    return C.MarkedGraph(parse_graph6(spec.strip()))


def cmd_analyze(args) -> tuple[str, int]:
    mg = read_input(args.input)
    g = mg.graph
    if g.n > SPECTRUM_LIMIT and not args.override_cap:
        raise UsageError(f"n={g.n} above the spectrum limit {SPECTRUM_LIMIT}; use --override-cap")
    spec = cycle_spectrum(g, override=args.override_cap)
    res: dict = {
        "graph6": write_graph6(g) if g.n <= 62 else None,
        "n": g.n,
        "edges": g.edge_count,
        "min_degree": min(g.degrees()) if g.n else 0,
        "spectrum": list(spec.lengths),
        "witnesses": {L: list(c.vertices) for L, c in spec.witnesses.items()},
    }
    bp = bipartition(g)
    res["bipartite"] = bp is not None
    if bp is not None:
        res["bipartition"] = [sorted(bp.side_a), sorted(bp.side_b)]
    if g.n >= 2:
        res["connectivity"] = vertex_connectivity(g)
    for k in args.mod or []:
        cov = residue_coverage(g, k)
        res.setdefault("residues", {})[k] = {
            "residues": sorted(cov.residues),
            "all_covered": cov.all_covered,
            "all_even_covered": cov.all_even_covered,
        }
    fam = best_progression(spec.lengths)
    if fam is None:
        res["family"] = None
    else:
        a, d, c = fam
        res["family"] = {"first": a, "difference": d, "count": c,
                         "lengths": [a + i * d for i in range(c)]}
        if args.family:
            res["family"]["cycles"] = [list(spec.witnesses[a + i * d].vertices) for i in range(c)]
    if args.blocks:
        if g.n and is_connected(g):
            bd = block_decomposition(g)
            res["blocks"] = {
                "blocks": [sorted(b) for b in bd.blocks],
                "cut_vertices": sorted(bd.cut_vertices),
                "end_blocks": bd.end_blocks,
                "is_block_chain": bd.is_block_chain,
            }
        else:
            res["blocks"] = "disconnected"
    if mg.marks:
        res["marks"] = dict(mg.marks)
    params = {"input": args.input, "mod": args.mod or [], "blocks": args.blocks, "family": args.family}
    if args.quiet:
        return " ".join(map(str, spec.lengths)) + "\n", 0
    return render("analyze", params, res), 0


def cmd_verify(args) -> tuple[str, int]:
    if args.list:
        body = {sid: s.summary for sid, s in REGISTRY.items()}
        return render("verify", {"list": True}, body), 0
    if args.theorem not in REGISTRY:
        raise UsageError(f"unknown theorem {args.theorem!r}; registered: {', '.join(REGISTRY)}")
    spec = REGISTRY[args.theorem]
    given = {}
    for key in ("k", "r"):
        val = getattr(args, key)
        if val is not None:
            if key not in spec.defaults:
                raise UsageError(f"{spec.id} takes no parameter {key}")
            given[key] = val
    n_max = args.n_max if args.n_max is not None else spec.desk_n_max
    if n_max > ENUM_CAP and not args.override_cap:
        raise UsageError(f"n_max {n_max} above the enumeration cap {ENUM_CAP}; use --override-cap")
    ckpt = args.resume or args.checkpoint
    try:
        rep = verify_theorem(args.theorem, n_max=n_max, jobs=args.jobs, params=given,
                             n_min=args.n_min, checkpoint=ckpt, budget=args.budget,
                             override_cap=args.override_cap, source=args.source)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    body = rep.as_dict()
    if args.timing:
        body["runtime_seconds"] = round(rep.runtime, 3)
    print(f"runtime {rep.runtime:.2f}s", file=sys.stderr)
    params = {"theorem": args.theorem, "params": rep.params, "n_max": n_max, "n_min": args.n_min,
              "source": args.source}
    code = 1 if rep.counterexamples and spec.kind != "search" else 0
    if args.quiet:
        return f"{rep.status}\n", code
    return render("verify", params, body, rep.cursor), code


def cmd_turan(args) -> tuple[str, int]:
    if args.k < 1 or not 0 <= args.ell < args.k:
        raise UsageError("need k >= 1 and 0 <= ell < k")
    if args.table:
        lo, _, hi = args.table.partition("..")
        ns = range(int(lo), int(hi or lo) + 1)
        if max(ns) > TURAN_CAP and not args.override_cap:
            raise UsageError(f"n above the Turán cap {TURAN_CAP}; use --override-cap")
        rows = turan_table(args.k, args.ell, ns, all_extremal=args.all_extremal)
        code = 1 if any(r.get("match") is False for r in rows) else 0
        return render("turan", {"k": args.k, "ell": args.ell, "table": args.table}, rows), code
    if args.n is None:
        raise UsageError("--n or --table is required")
    if args.n > TURAN_CAP and not args.override_cap:
        raise UsageError(f"n={args.n} above the Turán cap {TURAN_CAP}; use --override-cap")
    res = max_edges_without(args.n, args.ell, args.k, all_extremal=args.all_extremal,
                            override_cap=args.override_cap)
    if args.quiet:
        return f"{res.max_edges}\n", 0
    params = {"n": args.n, "ell": args.ell, "k": args.k, "all_extremal": args.all_extremal}
    return render("turan", params, res.as_dict()), 0


def cmd_gen(args) -> tuple[str, int]:
    mg = make_named(args.name)
    out = write_graph6(mg.graph) + "\n"
    if mg.marks:
        out += "# marks: " + " ".join(f"{k}={v}" for k, v in mg.marks.items()) + "\n"
    return out, 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclespec", description="cycle spectra and exhaustive checks")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="spectrum, residues, families, connectivity of one graph")
    a.add_argument("input", help="graph6 line, file (graph6 or 'n m' edge list), or generator name")
    a.add_argument("--mod", type=int, action="append", help="report residues modulo this k (repeatable)")
    a.add_argument("--family", action="store_true", help="include the longest admissible family")
    a.add_argument("--blocks", action="store_true", help="include the block decomposition")
    a.add_argument("--quiet", action="store_true")
    a.add_argument("--override-cap", action="store_true")

    v = sub.add_parser("verify", help="exhaustive check of a registered statement")
    v.add_argument("--theorem", default=None)
    v.add_argument("--list", action="store_true", help="list registered statements")
    v.add_argument("--k", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("--n-max", type=int)
    v.add_argument("--n-min", type=int)
    v.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    v.add_argument("--checkpoint", help="directory for per-partition progress files")
    v.add_argument("--resume", help="checkpoint directory of an interrupted run")
    v.add_argument("--budget", type=int, help="stop each partition after this many split nodes")
    v.add_argument("--source", help="read candidate graphs from a graph6 file instead of generating them")
    v.add_argument("--timing", action="store_true", help="add runtime to the report (not reproducible)")
    v.add_argument("--quiet", action="store_true")
    v.add_argument("--override-cap", action="store_true")

    t = sub.add_parser("turan", help="exact maximum edges without an (ell mod k)-cycle")
    t.add_argument("--n", type=int)
    t.add_argument("--ell", type=int, required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--all-extremal", action="store_true")
    t.add_argument("--table", help="range lo..hi, compared with known closed forms")
    t.add_argument("--quiet", action="store_true")
    t.add_argument("--override-cap", action="store_true")

    g = sub.add_parser("gen", help="print a named graph as graph6")
    g.add_argument("--name", required=True)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not args.list and not args.theorem:
        parser.error("verify needs --theorem or --list")
    handler = {"analyze": cmd_analyze, "verify": cmd_verify, "turan": cmd_turan, "gen": cmd_gen}[args.command]
    try:
        out, code = handler(args)
    except (UsageError, UnknownSpec, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
