"""Command-line interface: ``edgespec <subcommand> ...``.

Payloads are JSON on stdout, diagnostics on stderr.  Exit codes:
0 ok, 2 unparsable input, 3 representation absent (n <= 3), 4 budget
exceeded, 5 I/O failure, 6 input outside an operation's domain,
7 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict
from pathlib import Path

from . import census, edge_operator, graph_core, moments, weighted
from .sym_group import RepresentationAbsentError

log = logging.getLogger("edgespec")

OUTPUT_DIR_ENV = "EDGESPEC_OUTPUT_DIR"

EXIT_OK, EXIT_PARSE, EXIT_ABSENT, EXIT_BUDGET, EXIT_IO, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4, 5, 6, 7


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def read_graph(spec: str, n: int | None = None) -> graph_core.Graph:
    """A graph6 string, or a path to an edge-list file."""
    if os.path.isfile(spec):
        try:
            text = Path(spec).read_text()
        except OSError as exc:
            raise CommandError(EXIT_IO, f"cannot read {spec}: {exc}") from None
        try:
            return graph_core.parse_edge_list(text, n)
        except graph_core.GraphError as exc:
            raise CommandError(EXIT_PARSE, f"{spec}: {exc}") from None
    try:
        return graph_core.graph6_decode(spec)
    except (graph_core.GraphError, UnicodeEncodeError) as exc:
        raise CommandError(EXIT_PARSE, f"cannot parse graph6 {spec!r}: {exc}") from None


def emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=None)
    sys.stdout.write("\n")


def cmd_spectrum(args) -> None:
    g = read_graph(args.graph, args.n)
    out = {"graph6": graph_core.graph6_encode(g), "n": g.n}
    if g.n <= 3:
        raise CommandError(EXIT_ABSENT, f"representation absent: (n-2,2) does not exist for n={g.n}")
    out["dim"] = g.n * (g.n - 3) // 2
    if args.exact or not args.numeric:
        out["charpoly_22"] = edge_operator.charpoly_22(g).to_strings()
    if args.numeric:
        spec = edge_operator.spectrum_22(g, args.tol)
        out["eigenvalues"] = list(spec.eigenvalues)
        out["tol"] = spec.tolerance
    emit(out)


def cmd_moments(args) -> None:
    g = read_graph(args.graph, args.n)
    if g.n <= 3:
        raise CommandError(EXIT_ABSENT, f"representation absent: (n-2,2) does not exist for n={g.n}")
    g6 = graph_core.graph6_encode(g)
    if args.verify:
        methods = ["trace_difference", "newton", "oracle", "closed_form"]
    else:
        methods = [args.method]
    budget = args.budget
    if args.verify and g.m ** args.r_max > budget:
        log.warning("oracle skipped: %d words exceed the budget %d", g.m ** args.r_max, budget)
        methods.remove("oracle")
    reports = moments.moment_reports(g, args.r_max, methods, budget)
    if args.verify:
        by_r: dict[int, set[int]] = {}
        for rep in reports:
            by_r.setdefault(rep.r, set()).add(rep.value)
        bad = [r for r, vals in by_r.items() if len(vals) != 1]
        if bad:
            emit([rep.to_dict(g6) for rep in reports])
            raise CommandError(EXIT_VERIFY, f"methods disagree at r = {bad}")
    emit([rep.to_dict(g6) for rep in reports])


def cmd_counts(args) -> None:
    g = read_graph(args.graph, args.n)
    out = {"graph6": graph_core.graph6_encode(g), "n": g.n, "m": g.m,
           "counts": asdict(graph_core.three_edge_counts(g))}
    if g.is_tree():
        out["tree_closed_counts"] = asdict(graph_core.tree_closed_counts(g))
    emit(out)


def cmd_census(args) -> None:
    started = time.perf_counter()
    result = census.run_census(args.n, jobs=args.jobs)
    out_path = args.out
    if out_path is None and os.environ.get(OUTPUT_DIR_ENV):
        out_path = Path(os.environ[OUTPUT_DIR_ENV]) / f"census_n{args.n}.jsonl"
    if out_path is not None:
        try:
            Path(out_path).parent.mkdir(parents=True, exist_ok=True)
            result.write_jsonl(out_path)
        except OSError as exc:
            raise CommandError(EXIT_IO, f"cannot write {out_path}: {exc}") from None
        log.info("wrote %d records to %s", len(result.records), out_path)
    log.info("census n=%d finished in %.1fs", args.n, time.perf_counter() - started)
    s = result.summary
    if args.format == "csv":
        sys.stdout.write(census.summaries_to_csv([s]))
        return
    emit({
        "n": s.n, "number_of_trees": s.tree_count,
        "laplacian_cospectral_classes": s.cospectral_class_count,
        "trees_in_classes": s.trees_in_classes, "unresolved_by_22": s.unresolved_by_22,
        "row": s.row_text(), "jsonl": None if out_path is None else str(out_path),
    })


def cmd_gm(args) -> None:
    try:
        verdict = census.verify_gm_example()
    except census.RegressionError as exc:
        raise CommandError(EXIT_VERIFY, f"GM regression failed: {exc}") from None
    out = verdict.to_dict()
    if args.find_switch:
        g1, g2 = (graph_core.graph6_decode(s) for s in census.GM_GRAPH6)
        found = census.find_gm_switch(g1, g2)
        out["switching_set"] = None if found is None else list(found)
    emit(out)


def _weighted_payload(t: graph_core.Graph) -> dict:
    res = weighted.weighted_reconstruction(t)
    return {
        "graph6": graph_core.graph6_encode(t),
        "n": t.n,
        "route": res.route,
        "pairs": [pc.to_dict() for pc in res.table],
        "line_graph": sorted([sorted(list(e) for e in pair) for pair in res.line_graph.adjacent]),
        "reconstructed_graph6": graph_core.graph6_encode(res.tree),
        "reconstructed_code": graph_core.tree_canonical_code(res.tree),
        "isomorphic_to_input": graph_core.is_isomorphic(res.tree, t),
    }


def cmd_weighted(args) -> None:
    if args.all is not None:
        trees = list(census.enumerate_free_trees(args.all))
    elif args.graph is not None:
        trees = [read_graph(args.graph, args.n)]
    else:
        raise CommandError(EXIT_PARSE, "give a tree or --all N")
    payloads = []
    for t in trees:
        if not t.is_tree():
            raise CommandError(EXIT_DOMAIN, "weighted reconstruction needs a tree")
        if t.n <= 3:
            raise CommandError(EXIT_ABSENT, f"representation absent: (n-2,2) does not exist for n={t.n}")
        payloads.append(_weighted_payload(t))
    if args.all is not None and args.summary:
        emit({
            "n": args.all, "trees": len(payloads),
            "routes": sorted({p["route"] for p in payloads}),
            "all_reconstructed": all(p["isomorphic_to_input"] for p in payloads),
        })
    else:
        emit(payloads if args.all is not None else payloads[0])
    if not all(p["isomorphic_to_input"] for p in payloads):
        raise CommandError(EXIT_VERIFY, "a reconstruction is not isomorphic to its input")


def cmd_encode(args) -> None:
    g = read_graph(args.graph, args.n)
    sys.stdout.write(graph_core.graph6_encode(g) + "\n")


def cmd_decode(args) -> None:
    g = read_graph(args.graph)
    emit({"n": g.n, "m": g.m, "edges": [list(e) for e in g.edge_list]})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgespec", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_arg(p, optional=False):
        p.add_argument("graph", nargs="?" if optional else None,
                       help="graph6 string or path to an edge-list file")
        p.add_argument("--n", type=int, default=None, help="vertex count for edge-list input")

    p = sub.add_parser("spectrum", help="(n-2,2) characteristic polynomial and/or eigenvalues")
    graph_arg(p)
    p.add_argument("--exact", action="store_true", help="exact charpoly_22 (default)")
    p.add_argument("--numeric", action="store_true", help="sorted eigenvalues")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("moments", help="trace moments M_1..M_r")
    graph_arg(p)
    p.add_argument("--r-max", type=int, default=6)
    p.add_argument("--method", default="trace_difference",
                   choices=["trace_difference", "oracle", "newton", "closed_form"])
    p.add_argument("--verify", action="store_true", help="run every applicable method and compare")
    p.add_argument("--budget", type=int, default=moments.DEFAULT_WORD_BUDGET)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("counts", help="three-edge subgraph counts")
    graph_arg(p)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("census", help="Laplacian-cospectral tree census")
    p.add_argument("n", type=int)
    p.add_argument("--out", type=Path, default=None, help=f"JSON-lines output (default: ${OUTPUT_DIR_ENV})")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("gm", help="verify the regular Godsil-McKay example")
    p.add_argument("--find-switch", action="store_true")
    p.set_defaults(func=cmd_gm)

    p = sub.add_parser("weighted", help="pair coefficients and tree reconstruction")
    graph_arg(p, optional=True)
    p.add_argument("--all", type=int, default=None, metavar="N", help="every tree on N vertices")
    p.add_argument("--summary", action="store_true", help="with --all, print only a summary")
    p.set_defaults(func=cmd_weighted)

    p = sub.add_parser("encode", help="edge list to graph6")
    graph_arg(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="graph6 to JSON edge list")
    p.add_argument("graph")
    p.set_defaults(func=cmd_decode)
    return parser


def fail(code: int, message: str) -> int:
    print(f"edgespec: error: {message}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s", stream=sys.stderr,
    )
    try:
        args.func(args)
    except CommandError as exc:
        return fail(exc.code, str(exc))
    except RepresentationAbsentError as exc:
        return fail(EXIT_ABSENT, f"representation absent: {exc}")
    except moments.BudgetExceededError as exc:
        return fail(EXIT_BUDGET, f"budget exceeded: {exc}")
    except (graph_core.GraphError, ValueError) as exc:
        return fail(EXIT_DOMAIN, str(exc))
    except OSError as exc:
        return fail(EXIT_IO, f"I/O failure: {exc}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
