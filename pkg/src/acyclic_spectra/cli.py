"""Command-line front end: ``acyclic-spectra <verb> ...``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import auditor, graphs
from .graphs import Graph
from .polymatrix import format_polymatrix, parse_polymatrix, smith_normal_form
from .spectra import RatSymMatrix, eigen_structure, member_of_S, minimal_polynomial

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_DISCONNECTED = 3
EXIT_PRECONDITION = 4

EPILOG = """\
exit codes:
  0  success; every requested check passed
  1  a check failed (audit violation, rejected multiplicity list)
  2  usage error, or an input file could not be read or parsed
  3  the graph is disconnected
  4  the input violates a precondition (not a tree, size cap, bad family parameters)

ACYCLIC_SPECTRA_MAX_N overrides the brute-force size caps.
"""


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_BAD_INPUT) from None


def _load_graph(path: str) -> Graph:
    try:
        return graphs.parse_graph(_read(path))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_BAD_INPUT) from None


def _load_matrix(path: str) -> RatSymMatrix:
    try:
        return RatSymMatrix.parse(_read(path))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_BAD_INPUT) from None


def _emit(args: argparse.Namespace, payload: object, text: str) -> None:
    print(json.dumps(payload, indent=None) if args.json else text)


def _fmt_path(p: Sequence[int]) -> str:
    return "-".join(map(str, p))


# ------------------------------------------------------------------- verbs


def cmd_analyze(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    if not graphs.is_connected(g):
        raise CliError("graph is disconnected", EXIT_DISCONNECTED)
    d = graphs.diameter(g)
    tree = graphs.is_tree(g)
    info: dict = {"n": g.n, "is_tree": tree, "d": d}
    lines = [f"n={g.n} tree={'yes' if tree else 'no'}"]
    if tree:
        p, family = graphs.path_cover_number(g)
        q_lower = d + 1
        info.update(p=p, paths=[list(x) for x in family], M_upper=p)
        bounds = [f"bound thm-5.1: q >= {d + 1}"]
        w = graphs.detect_whirl(g)
        if w is not None:
            info["whirl"] = {"k": w.k, "ell": w.ell}
            whirl_bound = None
            if w.k == 3 and w.ell >= 2:
                whirl_bound = ("thm-5.2", Fraction(9 * d, 8) + Fraction(1, 2))
            elif w.k >= 3 and w.ell >= 2:
                whirl_bound = ("thm-5.4", d + 1 + Fraction((w.k - 2) * (w.ell - 1), (w.k - 1) ** 2))
            if whirl_bound is not None:
                claim, value = whirl_bound
                q_lower = max(q_lower, math.ceil(value))
                bounds.append(f"bound {claim}: q >= {value}")
                info["whirl"]["bound"] = str(value)
        info["q_lower"] = q_lower
        lines.append(f"p={p} d={d} q_lower={q_lower} M_upper={p}")
        lines.append("paths: " + " | ".join(_fmt_path(x) for x in family))
        if w is not None:
            lines.append(f"whirl k={w.k} l={w.ell} axis={w.axis}")
        lines += bounds
    else:
        lines.append(f"d={d}")
    _emit(args, info, "\n".join(lines))
    return EXIT_OK


def cmd_snf(args: argparse.Namespace) -> int:
    try:
        m = parse_polymatrix(_read(args.polymatrix))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"{args.polymatrix}: {exc}", EXIT_BAD_INPUT) from None
    res = smith_normal_form(m)
    factors = [str(e) for e in res.invariant_factors]
    payload = {
        "rank": res.rank,
        "invariant_factors": factors,
        "P": [[str(e) for e in row] for row in res.P.entries],
        "Q": [[str(e) for e in row] for row in res.Q.entries],
    }
    text = "\n".join(
        [f"rank={res.rank}"]
        + [f"e{i}={e}" for i, e in enumerate(factors, start=1)]
        + ["P:", format_polymatrix(res.P).rstrip(), "Q:", format_polymatrix(res.Q).rstrip()]
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_eig(args: argparse.Namespace) -> int:
    a = _load_matrix(args.matrix)
    es = eigen_structure(a)
    mp = minimal_polynomial(a)
    lines = [
        f"charpoly={es.charpoly}",
        f"q={es.q}",
        "multiplicities=<" + ",".join(map(str, es.multiplicity_list)) + ">",
        f"minpoly={mp}",
    ]
    for grp in es.groups:
        root = grp.root if grp.is_rational else f"({grp.root.lo}, {grp.root.hi})"
        lines.append(f"root {root} mult {grp.mult}")
    code = EXIT_OK
    if args.graph:
        g = _load_graph(args.graph)
        try:
            member = member_of_S(a, g)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_PRECONDITION) from None
        lines.append(f"in_S={'yes' if member else 'no'}")
        code = EXIT_OK if member else EXIT_CHECK_FAILED
    _emit(args, es.to_json(), "\n".join(lines))
    return code


def cmd_gen(args: argparse.Namespace) -> int:
    fam, params = args.family, args.params

    def need(count: int) -> list[int]:
        if len(params) != count:
            raise CliError(f"gen {fam} takes {count} integer parameter(s)", EXIT_BAD_INPUT)
        return params

    try:
        if fam == "whirl":
            k, ell = need(2)
            g, note = graphs.whirl(k, ell).graph, f"({k},{ell})-whirl"
        elif fam == "figure2":
            need(0)
            g, note = graphs.figure2_tree(), "figure2 tree"
        elif fam == "figure6":
            need(0)
            g, note = graphs.figure6_tree(), "figure6 tree"
        elif fam == "figure14":
            m, ell = need(2)
            anchors = (1, 1 + m // 3, 1 + (2 * m) // 3)
            g = graphs.figure14_graph(graphs.cycle_graph(m), anchors, ell).graph
            note = f"figure14 on a {m}-cycle, anchors {anchors}, legs of {ell}"
        elif fam == "path":
            (n,) = need(1)
            g, note = graphs.path_graph(n), f"path on {n} vertices"
        elif fam == "star":
            (leaves,) = need(1)
            g, note = graphs.star_graph(leaves), f"star with {leaves} leaves"
        else:
            (n,) = need(1)
            g, note = graphs.random_tree(n, args.seed), f"random tree n={n} seed={args.seed}"
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    text = graphs.format_graph(g, note)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    seeds = range(args.seed, args.seed + args.seeds)
    claims = auditor.CLAIM_IDS if args.claim == "all" else (args.claim,)
    if args.claim != "all" and args.claim not in auditor.CLAIM_IDS:
        raise CliError(f"unknown claim {args.claim!r}; known: all, {', '.join(auditor.CLAIM_IDS)}", EXIT_BAD_INPUT)
    reports = [auditor.run_claim(c, seeds, jobs=args.jobs) for c in claims]
    if args.json:
        payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
        print(json.dumps(payload))
    else:
        for r in reports:
            print(r)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def cmd_screen(args: argparse.Namespace) -> int:
    t = _load_graph(args.graph)
    if not graphs.is_connected(t):
        raise CliError("graph is disconnected", EXIT_DISCONNECTED)
    try:
        rep = auditor.screen_multiplicity_list(t, args.mults)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    _emit(args, rep.to_json(), str(rep))
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for all sampling (default 0)")

    parser = argparse.ArgumentParser(
        prog="acyclic-spectra",
        description="Exact eigenvalue multiplicity tools for symmetric matrices with a given graph.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("analyze", parents=[common], help="diameter, path cover and bounds of a graph")
    p.add_argument("graph", help="graph file ('-' for stdin)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of a polynomial matrix")
    p.add_argument("polymatrix")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("eig", parents=[common], help="exact eigenvalue structure of a rational symmetric matrix")
    p.add_argument("matrix")
    p.add_argument("--graph", help="also check membership in S(graph)")
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("gen", parents=[common], help="write a graph from a named family")
    p.add_argument("family", choices=["whirl", "figure2", "figure6", "figure14", "path", "star", "random"])
    p.add_argument("params", nargs="*", type=int, help="whirl K L | figure14 M L | path N | star LEAVES | random N")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("audit", parents=[common], help="audit a claim over seeded samples")
    p.add_argument("claim", help="claim id or 'all': " + ", ".join(auditor.CLAIM_IDS))
    p.add_argument("--seeds", type=int, default=200, help="number of seeds (default 200)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("screen", parents=[common], help="necessary conditions on a multiplicity list")
    p.add_argument("graph")
    p.add_argument("mults", nargs="+", type=int)
    p.set_defaults(func=cmd_screen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
