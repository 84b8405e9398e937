"""Command-line interface.

Exit codes are stable: 0 success, 1 input or usage problem, 2 graph not
nice (contains a two-vertex component), 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys

from .engine import brute_force_min_k, label_graph, random_nice_graph
from .graph import Graph, GraphFormatError, NotNiceError, parse_graph
from .labelling import find_conflicts, format_labelling, format_products, parse_labelling

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_NICE = 2
EXIT_CONFLICTS = 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str, fmt: str) -> Graph:
    return parse_graph(_read(path), fmt)


def cmd_label(args) -> int:
    g = _load_graph(args.graph, args.format)
    report = label_graph(g, trace=args.trace)
    if args.trace:
        for line in report.trace:
            print(line, file=sys.stderr)
    # The pipeline's own verdict is recomputed from the labels; refuse to
    # report success unless the independent scan agrees.
    if find_conflicts(g, report.labelling):
        print("internal error: labelling failed verification", file=sys.stderr)
        return EXIT_CONFLICTS
    out = format_labelling(g, report.labelling) + "\n" + format_products(g, report.labelling)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph, args.format)
    labelling = parse_labelling(g, _read(args.labelling))
    conflicts = find_conflicts(g, labelling)
    if conflicts:
        for eid in conflicts:
            u, v = g.edges[eid]
            print(f"conflict: edge ({u},{v}) joins equal products")
        return EXIT_CONFLICTS
    print("ok")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph, args.format)
    if g.m > 16:
        print(f"oracle bound exceeded: {g.m} edges > 16", file=sys.stderr)
        return EXIT_INPUT
    k = brute_force_min_k(g, args.kmax)
    if k is None:
        print(f"chi_P > {args.kmax}")
    else:
        print(f"chi_P = {k}")
    return EXIT_OK


def cmd_fuzz(args) -> int:
    if args.trials < 1:
        print("trials must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    failures = 0
    tally: dict[str, int] = {}
    for trial in range(args.trials):
        seed = args.seed + trial
        g = random_nice_graph(args.n, args.p, seed)
        try:
            report = label_graph(g)
            bad = bool(find_conflicts(g, report.labelling))
            bad = bad or any(lab not in (1, 2, 3) for lab in report.labelling.labels)
        except Exception as exc:  # noqa: BLE001 - fuzz must report, not crash
            print(f"trial {trial} raised {exc!r}", file=sys.stderr)
            bad = True
            report = None
        if report is not None:
            for case, count in report.tally.items():
                tally[case] = tally.get(case, 0) + count
        if bad:
            failures += 1
            repro = f"fuzz_fail_{trial}.edges"
            with open(repro, "w", encoding="utf-8") as fh:
                fh.write(f"# trial {trial} seed {seed} n {args.n} p {args.p}\n")
                fh.write(g.to_edge_list())
            print(f"trial {trial} FAILED (seed {seed}); wrote {repro}", file=sys.stderr)
    print(f"{args.trials - failures}/{args.trials} ok")
    for case in sorted(tally):
        print(f"  {case}: {tally[case]}")
    return EXIT_OK if failures == 0 else EXIT_CONFLICTS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodlabel",
        description="Label graph edges with 1, 2, 3 so adjacent vertices get "
                    "distinct products of incident labels.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("auto", "edgelist", "dimacs"), default="auto",
                       help="input format (default: detected from content)")

    p = sub.add_parser("label", help="label a graph and print labels plus products")
    p.add_argument("graph", help="graph file, or - for stdin")
    add_format(p)
    p.add_argument("--trace", action="store_true", help="print pipeline trace to stderr")
    p.add_argument("--out", help="write output to a file instead of stdout")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("verify", help="check a labelling file against a graph")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("labelling", help="labelling file with 'u v label' lines")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive smallest-k search (m <= 16)")
    p.add_argument("graph", help="graph file, or - for stdin")
    add_format(p)
    p.add_argument("--kmax", type=int, default=3, help="largest k to try (default 3)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fuzz", help="random end-to-end trials with verification")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n", type=int, default=20, help="vertex count per trial")
    p.add_argument("--p", type=float, default=0.3, help="edge probability")
    p.add_argument("--seed", type=int, default=0, help="seed of the first trial")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotNiceError:
        print("graph is not nice: it contains a two-vertex component", file=sys.stderr)
        return EXIT_NOT_NICE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
