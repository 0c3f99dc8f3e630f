"""Command-line frontend.

One subcommand per library capability; deterministic output (identical
inputs and flags give byte-identical bytes). Numbers print with 12
significant digits. Exit codes: 0 success, 1 counterexample found,
2 usage error, 3 input error.
"""

import argparse
import csv
import json
import os
import sys

from . import factor as factor_mod
from . import theorem as theorem_mod
from .factor import find_even_factor, naive_even_factor, yan_kano_check
from .graphs import (
    GraphParseError,
    JoinUnionSpec,
    SizeLimitError,
    build_join_union,
    iter_graph6_file,
    parse_graph6,
    write_graph6,
)
from .quotient import charpoly_join, largest_real_root, natural_partition, quotient_matrix
from .spectral import alpha_matrix, full_spectrum, spectral_radius
from .theorem import (
    ExtremalSpec,
    build_extremal,
    case3_quadratic_form,
    case3_surgery,
    classify,
    iter_random_connected,
    rho_star,
    subcase_positivity_scan,
    verify_corpus,
)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3


def _fmt(x):
    return format(x, ".12g")


def _add_graph_source(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph6", help="graph6 string of a single graph")
    group.add_argument(
        "--input",
        help="path to a graph6 file (one graph per line; '>>graph6<<' header tolerated)",
    )


def _load_graphs(args):
    """Yield (graph_id, Graph) from --graph6 or --input."""
    if args.graph6 is not None:
        yield args.graph6, parse_graph6(args.graph6)
        return
    for lineno, raw in iter_graph6_file(args.input):
        try:
            g = parse_graph6(raw)
        except GraphParseError as exc:
            exc.args = (f"{args.input} line {lineno}: {exc.args[0]}",)
            raise
        yield f"{args.input}:{lineno}", g


def build_parser():
    parser = argparse.ArgumentParser(
        prog="alphafactor",
        description="Alpha-weighted spectral radii and even-factor verification",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("radius", help="largest eigenvalue of a*D + (1-a)*A")
    _add_graph_source(p)
    p.add_argument("--alpha", type=float, action="append", help="weight in [0,1]; repeatable")
    p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance (default 1e-10)")

    p = subs.add_parser("spectrum", help="full eigenvalue list, nonincreasing")
    _add_graph_source(p)
    p.add_argument("--alpha", type=float, action="append")
    p.add_argument("--tol", type=float, default=1e-10)

    p = subs.add_parser("quotient", help="quotient matrix of a vertex partition")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph6")
    group.add_argument("--input", help="graph6 file; --cells applies to every graph")
    group.add_argument("--spec", help="clique family 's:n1,n2,...' with its natural partition")
    p.add_argument("--cells", help="partition as 'v,v,...|v,...' (required unless --spec)")
    p.add_argument("--alpha", type=float, default=0.0)

    p = subs.add_parser("charpoly", help="quotient cubic of K_s v (K_{n-2s+1} u (s-1)K_1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.0)

    p = subs.add_parser("evenfactor", help="even-factor existence (cycle-space oracle)")
    _add_graph_source(p)
    p.add_argument("--dim-budget", type=int, default=factor_mod.DEFAULT_DIM_BUDGET)
    p.add_argument("--naive", action="store_true", help="use the brute-force oracle instead")

    p = subs.add_parser("yankano", help="odd-component condition o(G-S) < |S|")
    _add_graph_source(p)
    p.add_argument("--subset-budget", type=int, default=factor_mod.DEFAULT_SUBSET_BUDGET)

    p = subs.add_parser("extremal", help="build the extremal graph for (n, delta)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--emit-graph6", action="store_true", help="print only the graph6 line")
    p.add_argument("--alpha", type=float, action="append", help="also print rho* at these weights")

    p = subs.add_parser("classify", help="verdict record for each graph at each alpha")
    _add_graph_source(p)
    p.add_argument("--alpha", type=float, action="append", required=True)
    p.add_argument("--eps", type=float, default=theorem_mod.DEFAULT_EPS)
    p.add_argument("--dim-budget", type=int, default=factor_mod.DEFAULT_DIM_BUDGET)
    p.add_argument("--subset-budget", type=int, default=factor_mod.DEFAULT_SUBSET_BUDGET)

    p = subs.add_parser("verify", help="classify a corpus; exit 1 iff counterexamples")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", help="graph6 corpus file")
    group.add_argument("--random", type=int, metavar="COUNT",
                       help="use COUNT seeded random connected min-degree-2 graphs instead")
    p.add_argument("--random-n", type=int, default=8, help="order for --random (default 8)")
    p.add_argument("--edge-prob", type=float, default=0.5, help="edge probability for --random")
    p.add_argument("--seed", type=int, default=0, help="starting seed for --random")
    p.add_argument("--alpha", type=float, action="append", required=True)
    p.add_argument("--eps", type=float, default=theorem_mod.DEFAULT_EPS)
    p.add_argument("--dim-budget", type=int, default=factor_mod.DEFAULT_DIM_BUDGET)
    p.add_argument("--subset-budget", type=int, default=factor_mod.DEFAULT_SUBSET_BUDGET)
    p.add_argument("--out", help="write one verdict record per line (JSON) here")
    p.add_argument("--csv", help="write the per-alpha summary CSV here instead of stdout")
    p.add_argument("--jobs", type=int, default=None,
                   help="parallel workers (default: ALPHAFACTOR_JOBS or 1)")

    p = subs.add_parser("scan-subcases", help="positivity scan of the dominance quadratic")
    p.add_argument("--alpha", type=float, action="append", required=True)
    p.add_argument("--delta-min", type=int, default=2)
    p.add_argument("--delta-max", type=int, default=6)
    p.add_argument("--margin", type=int, default=10,
                   help="scan even orders up to min_order + margin (default 10)")

    p = subs.add_parser("case3", help="edge-surgery comparison pair and its radius gap")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.0)

    return parser


def _graph_prefix(graph_id, many_graphs, alpha, many_alphas):
    parts = []
    if many_graphs:
        parts.append(f"graph={graph_id}")
    if many_alphas:
        parts.append(f"alpha={_fmt(alpha)}")
    return " ".join(parts)


def _cmd_radius(args):
    alphas = args.alpha or [0.0]
    graphs = list(_load_graphs(args))
    many = len(graphs) > 1
    for gid, g in graphs:
        for a in alphas:
            prefix = _graph_prefix(gid, many, a, len(alphas) > 1)
            value = _fmt(spectral_radius(g, a, tol=args.tol).radius)
            print(f"{prefix} {value}".strip())
    return EXIT_OK


def _cmd_spectrum(args):
    alphas = args.alpha or [0.0]
    graphs = list(_load_graphs(args))
    many = len(graphs) > 1
    for gid, g in graphs:
        for a in alphas:
            prefix = _graph_prefix(gid, many, a, len(alphas) > 1)
            values = full_spectrum(alpha_matrix(g, a), tol=args.tol)
            payload = " ".join(_fmt(v) for v in values)
            print(f"{prefix} {payload}".strip())
    return EXIT_OK


def _parse_cells(text):
    cells = []
    for chunk in text.split("|"):
        cells.append(tuple(int(tok) for tok in chunk.split(",") if tok.strip() != ""))
    return cells


def _parse_spec(text):
    s_part, _, rest = text.partition(":")
    parts = tuple(int(tok) for tok in rest.split(",") if tok.strip() != "")
    return JoinUnionSpec(s=int(s_part), parts=parts)


def _cmd_quotient(args):
    if args.spec is not None:
        spec = _parse_spec(args.spec)
        sources = [(args.spec, build_join_union(spec))]
        cells = natural_partition(spec)
    else:
        if not args.cells:
            raise ValueError("--cells is required unless --spec is given")
        sources = list(_load_graphs(args))
        cells = _parse_cells(args.cells)
    for gid, g in sources:
        if len(sources) > 1:
            print(f"graph={gid}")
        qm = quotient_matrix(g, args.alpha, cells)
        for row in qm.entries:
            print(" ".join(_fmt(v) for v in row))
        print(f"equitable={'true' if qm.equitable else 'false'}")
    return EXIT_OK


def _cmd_charpoly(args):
    poly = charpoly_join(args.n, args.s, args.alpha)
    print(f"c2={_fmt(poly.c2)} c1={_fmt(poly.c1)} c0={_fmt(poly.c0)}")
    print(f"largest_root={_fmt(largest_real_root(poly, float(args.n)))}")
    return EXIT_OK


def _cmd_evenfactor(args):
    for gid, g in _load_graphs(args):
        verdict = naive_even_factor(g) if args.naive else find_even_factor(g, args.dim_budget)
        line = f"exists={verdict.exists} method={verdict.method}"
        if verdict.witness is not None and verdict.exists == factor_mod.YES:
            edges = ",".join(f"{u}-{v}" for u, v in sorted(verdict.witness))
            line += f" witness={edges}"
        print(line)
    return EXIT_OK


def _cmd_yankano(args):
    for gid, g in _load_graphs(args):
        result = yan_kano_check(g, subset_budget=args.subset_budget)
        if result.status == factor_mod.VIOLATED:
            print(f"violated S={','.join(map(str, result.violating_set))}")
        else:
            print(result.status)
    return EXIT_OK


def _cmd_extremal(args):
    spec = ExtremalSpec(n=args.n, delta=args.delta)
    g = build_extremal(spec)
    if args.emit_graph6:
        print(write_graph6(g).decode("ascii"))
        return EXIT_OK
    print(f"n={g.n} delta={spec.delta} edges={g.m} graph6={write_graph6(g).decode('ascii')}")
    for a in args.alpha or []:
        print(f"alpha={_fmt(a)} rho_star={_fmt(rho_star(spec, a))}")
    return EXIT_OK


def _cmd_classify(args):
    worst = EXIT_OK
    for gid, g in _load_graphs(args):
        for a in args.alpha:
            record = classify(
                g, a, eps=args.eps, dim_budget=args.dim_budget,
                subset_budget=args.subset_budget, graph_id=gid,
            )
            print(json.dumps(record.to_json_dict()))
            if record.counterexample:
                worst = EXIT_COUNTEREXAMPLE
    return worst


def _resolve_jobs(args):
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("ALPHAFACTOR_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"ALPHAFACTOR_JOBS must be an integer, got {env!r}")
    return 1


def _cmd_verify(args):
    read_errors = []

    def corpus_from_file():
        for lineno, raw in iter_graph6_file(args.input):
            try:
                yield f"line {lineno}", parse_graph6(raw)
            except GraphParseError as exc:
                read_errors.append((lineno, str(exc)))
                print(f"line {lineno}: {exc}", file=sys.stderr)

    if args.input is not None:
        corpus = corpus_from_file()
    else:
        corpus = iter_random_connected(
            args.random_n, args.edge_prob, args.random, start_seed=args.seed
        )
    records, summary = verify_corpus(
        corpus,
        args.alpha,
        eps=args.eps,
        dim_budget=args.dim_budget,
        subset_budget=args.subset_budget,
        jobs=_resolve_jobs(args),
    )
    summary.read_errors.extend(read_errors)
    if args.out:
        with open(args.out, "w") as fh:
            for record in records:
                fh.write(json.dumps(record.to_json_dict()) + "\n")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerows(summary.csv_rows())
    else:
        writer = csv.writer(sys.stdout)
        writer.writerows(summary.csv_rows())
    if summary.read_errors:
        print(f"unreadable corpus lines: {len(summary.read_errors)}", file=sys.stderr)
    return EXIT_COUNTEREXAMPLE if summary.counterexamples else EXIT_OK


def _cmd_scan_subcases(args):
    report = subcase_positivity_scan(
        args.alpha, range(args.delta_min, args.delta_max + 1), args.margin
    )
    print(f"checked={report.checked} violations={len(report.violations)}")
    if report.min_value is not None:
        a, delta, n, s = report.min_point
        print(
            f"min_value={_fmt(report.min_value)} at alpha={_fmt(a)} "
            f"delta={delta} n={n} s={s}"
        )
    for violation in report.violations:
        print(
            "VIOLATION "
            + " ".join(f"{key}={value}" for key, value in violation.items())
        )
    return EXIT_OK


def _cmd_case3(args):
    g3, g4, edge_delta = case3_surgery(args.n, args.delta, args.s)
    gap = (
        spectral_radius(g4, args.alpha).radius - spectral_radius(g3, args.alpha).radius
    )
    quad = case3_quadratic_form(args.n, args.delta, args.s, args.alpha)
    print(f"edges_g3={g3.m} edges_g4={g4.m} edge_delta={edge_delta}")
    print(f"radius_gap={_fmt(gap)} perron_quadratic_form={_fmt(quad)}")
    return EXIT_OK


_HANDLERS = {
    "radius": _cmd_radius,
    "spectrum": _cmd_spectrum,
    "quotient": _cmd_quotient,
    "charpoly": _cmd_charpoly,
    "evenfactor": _cmd_evenfactor,
    "yankano": _cmd_yankano,
    "extremal": _cmd_extremal,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "scan-subcases": _cmd_scan_subcases,
    "case3": _cmd_case3,
}


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return exc.code if exc.code is not None else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except (GraphParseError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, SizeLimitError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
