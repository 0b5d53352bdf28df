"""Batch command-line front end.

Subcommands: decompose | verify | oracle | gen | scan. Exit codes are a
stable contract: 0 success, 1 verification failure, 2 infeasible (flow cut or
LP verdict), 3 input error, 4 guardrail abort. Diagnostics go to stderr,
never into data files.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction

from .decompose import (
    CutCertificate,
    decompose,
    format_cut_certificate,
    format_decomposition,
    parse_decomposition,
    solve,
)
from .errors import (
    EdgeInNoTriangleError,
    GuardrailError,
    InputFormatError,
    TridecompError,
)
from .graph import DEFAULT_MAX_LINKS
from .instances import GenSpec, generate, read_edge_list, write_edge_list
from .lp import DEFAULT_MAX_LP_TRIANGLES, lp_feasible
from .peeling import peel_heavy_triangles
from .verify import verify

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INFEASIBLE = 2
EXIT_INPUT = 3
EXIT_GUARDRAIL = 4


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def _parts(text):
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma list of ints: {text!r}") from exc
    return parts


def _add_input_flags(p):
    p.add_argument("--input", help="edge-list file to read")
    p.add_argument("--gen", help="generate the input instead (family name)")
    p.add_argument("--n", type=int, default=0, help="vertex count for --gen")
    p.add_argument("--fraction", type=_fraction, help="min-degree fraction for --gen")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--parts", type=_parts, help="part sizes for complete-multipartite")


def _load_graph(args):
    if bool(args.input) == bool(args.gen):
        raise InputFormatError("exactly one of --input or --gen is required")
    if args.input:
        try:
            with open(args.input) as fh:
                return read_edge_list(fh.read())
        except OSError as exc:
            raise InputFormatError(f"cannot read {args.input}: {exc}") from exc
    spec = GenSpec(
        family=args.gen,
        n=args.n,
        fraction=args.fraction,
        seed=args.seed,
        parts=args.parts,
    )
    try:
        return generate(spec)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def _write_output(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_decompose(args):
    g = _load_graph(args)
    try:
        outcome = decompose(g, mode=args.mode, max_links=args.max_links)
    except EdgeInNoTriangleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        if args.fallback_lp:
            return _oracle_output(args, g)
        return EXIT_INFEASIBLE
    if isinstance(outcome, CutCertificate):
        if args.fallback_lp:
            return _oracle_output(args, g)
        _write_output(args, format_cut_certificate(outcome))
        return EXIT_INFEASIBLE
    report = verify(g, outcome, mode=args.mode)
    if not report.ok:
        print(f"internal error, decomposition failed to verify: {report}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    _write_output(args, format_decomposition(outcome))
    print(f"verified: {report}", file=sys.stderr)
    return EXIT_OK


def _oracle_output(args, g):
    verdict = lp_feasible(g, max_triangles=args.max_lp_triangles)
    if not verdict.feasible:
        _write_output(args, "INFEASIBLE\n")
        return EXIT_INFEASIBLE
    report = verify(g, verdict.decomposition)
    if not report.ok:
        print(f"internal error, oracle witness failed to verify: {report}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    _write_output(args, format_decomposition(verdict.decomposition))
    return EXIT_OK


def cmd_oracle(args):
    g = _load_graph(args)
    return _oracle_output(args, g)


def cmd_verify(args):
    try:
        with open(args.graph) as fh:
            g = read_edge_list(fh.read())
        with open(args.decomposition) as fh:
            d = parse_decomposition(fh.read(), mode=args.mode)
    except OSError as exc:
        raise InputFormatError(str(exc)) from exc
    report = verify(g, d, mode=args.mode)
    print(report)
    return EXIT_OK if report.ok else EXIT_VERIFY_FAIL


def cmd_gen(args):
    spec = GenSpec(
        family=args.family,
        n=args.n,
        fraction=args.fraction,
        seed=args.seed,
        parts=args.parts,
    )
    try:
        g = generate(spec)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc
    _write_output(args, write_edge_list(g))
    return EXIT_OK


def _scan_one(n, fraction, seed, mode, max_links, max_lp_triangles):
    """One trial row: generate, peel, flow, optional oracle cross-check."""
    g = generate(GenSpec("random-min-degree", n=n, fraction=fraction, seed=seed))
    peel = peel_heavy_triangles(g)
    row = {
        "fraction": str(fraction),
        "n": n,
        "seed": seed,
        "peeled": len(peel.removed),
        "flow_ok": 0,
        "lp_ok": "",
        "M": "",
        "value": "",
    }
    entries = [(tri, Fraction(1)) for tri in peel.removed]
    if peel.residual.m == 0:
        row["flow_ok"] = 1
        row["M"] = "0"
        row["value"] = "0"
    else:
        try:
            outcome = solve(peel.residual, peel.deficiency, mode=mode, max_links=max_links)
        except EdgeInNoTriangleError:
            outcome = None
        if isinstance(outcome, CutCertificate):
            row["M"] = str(outcome.required_flow)
            row["value"] = str(outcome.cut_capacity)
        elif outcome is not None:
            row["flow_ok"] = 1
            row["M"] = str(outcome.required_flow)
            row["value"] = str(outcome.required_flow)
            entries.extend(outcome.items())
    if row["flow_ok"]:
        entries.sort(key=lambda item: item[0])
        report = verify(g, entries, mode=mode)
        if not report.ok:
            raise AssertionError(f"scan trial produced an invalid decomposition: {report}")
    try:
        row["lp_ok"] = 1 if lp_feasible(g, max_triangles=max_lp_triangles).feasible else 0
    except GuardrailError:
        row["lp_ok"] = ""
    return row


def cmd_scan(args):
    fractions = args.fractions or []
    fieldnames = ["fraction", "n", "seed", "flow_ok", "lp_ok", "peeled", "M", "value"]
    rows = []
    success = {}
    for fraction in fractions:
        ok = 0
        for sample in range(args.samples):
            row = _scan_one(
                args.n,
                fraction,
                args.seed + sample,
                args.mode,
                args.max_links,
                args.max_lp_triangles,
            )
            rows.append(row)
            ok += row["flow_ok"]
        success[fraction] = ok
    out = sys.stdout if not args.out else open(args.out, "w")
    try:
        writer = csv.DictWriter(out, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    for fraction in fractions:
        print(
            f"fraction {fraction}: {success[fraction]}/{args.samples} flow successes",
            file=sys.stderr,
        )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tridecomp",
        description="Fractional triangle decompositions of dense graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="run the flow pipeline on a graph")
    _add_input_flags(p)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--fallback-lp", action="store_true", help="retry with the LP oracle")
    p.add_argument("--max-links", type=int, default=DEFAULT_MAX_LINKS)
    p.add_argument("--max-lp-triangles", type=int, default=DEFAULT_MAX_LP_TRIANGLES)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check a decomposition against its graph")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("decomposition", help="decomposition file")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact LP feasibility verdict")
    _add_input_flags(p)
    p.add_argument("--max-lp-triangles", type=int, default=DEFAULT_MAX_LP_TRIANGLES)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a generated instance as an edge list")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--fraction", type=_fraction)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parts", type=_parts)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("scan", help="flow success rates over a fraction grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--fractions",
        type=lambda s: [_fraction(tok) for tok in s.split(",") if tok],
        default=[],
        help="comma-separated min-degree fractions",
    )
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--max-links", type=int, default=DEFAULT_MAX_LINKS)
    p.add_argument("--max-lp-triangles", type=int, default=DEFAULT_MAX_LP_TRIANGLES)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardrailError as exc:
        print(f"guardrail: {exc}", file=sys.stderr)
        return EXIT_GUARDRAIL
    except TridecompError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
