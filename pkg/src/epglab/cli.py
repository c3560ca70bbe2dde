"""Command-line front end.

Reports are ``KEY value`` lines on stdout.  Commands that produce a
representation write it to stdout (so they pipe into the next command) and
move their report to stderr, unless ``--emit`` sends the representation to a
file instead.

Exit codes: 0 success, 10 certified negative, 11 exhausted or inconclusive,
2 usage, 3 parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Sequence, TextIO

from .certificates import certify_not_b1, helly_obstructions
from .classes import (
    Ambiguous,
    FAMILY_NAMES,
    FamilySpec,
    classify,
    default_catalog,
    generate,
    load_catalog,
    venn_region,
)
from .construct import DiamondWitness, construct_block, construct_cactus, hellify
from .errors import (
    BadParameter,
    CatalogMissing,
    DegeneratePath,
    EpglabError,
    NotBlockGraph,
    NotCactus,
    OutOfBounds,
    ParseError,
    RangeError,
)
from .graph import Graph, format_graph, maximal_cliques, parse_graph
from .grid import (
    classify_clique,
    find_pies,
    format_representation,
    intersection_graph,
    is_helly,
    parse_representation,
)
from .render import render
from .search import SearchBudget, search_b1
from .tree import format_tree_rep, search_tree_rep

EXIT_OK = 0
EXIT_NEGATIVE = 10
EXIT_INCONCLUSIVE = 11
EXIT_USAGE = 2
EXIT_PARSE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit; we want our own code path
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# input helpers
# --------------------------------------------------------------------------


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, stdin: TextIO, parse: Callable):
    text = _read(path, stdin)
    try:
        return parse(text)
    except (ParseError, OutOfBounds, DegeneratePath) as exc:
        where = "<stdin>" if path == "-" else path
        raise ParseError(f"{where}: {exc}") from None


def _grid(text: str | None) -> tuple[int | None, int | None]:
    if text is None:
        return None, None
    w, sep, h = text.lower().partition("x")
    if not sep or not w.isdigit() or not h.isdigit() or int(w) < 2 or int(h) < 2:
        raise UsageError(f"--grid expects WxH with W, H >= 2, got {text!r}")
    return int(w), int(h)


def _budget(args, helly: bool = False) -> SearchBudget:
    w, h = _grid(getattr(args, "grid", None))
    return SearchBudget(
        width=w,
        height=h,
        max_nodes=args.max_nodes,
        max_seconds=getattr(args, "max_seconds", None),
        require_helly=helly,
    )


def _catalog(args):
    path = getattr(args, "catalog", None)
    if path is None:
        return default_catalog()
    try:
        return load_catalog(path)
    except OSError as exc:
        raise UsageError(f"cannot read catalog {path}: {exc.strerror}") from None


# --------------------------------------------------------------------------
# subcommands; each returns an exit code
# --------------------------------------------------------------------------


def cmd_corpus(args, out, err, stdin) -> int:
    spec = FamilySpec(args.family, tuple(args.params))
    cat = _catalog(args) if args.family.startswith("catalog:") else None
    out.write(format_graph(generate(spec, cat)))
    return EXIT_OK


def _outcome_lines(outcome, n: int) -> tuple[list[str], int]:
    if outcome.kind == "found":
        rep = outcome.rep
        return ["RESULT found", f"GRID {rep.width}x{rep.height}", f"NODES {outcome.nodes}"], EXIT_OK
    if outcome.kind == "exhausted":
        lines = ["RESULT exhausted", f"GRID {outcome.width}x{outcome.height}", f"NODES {outcome.nodes}"]
        # one-bend paths use at most 2 distinct coordinates per axis, so any
        # representation compresses onto a 2n x 2n grid; 3n leaves a margin
        if min(outcome.width, outcome.height) >= 3 * n:
            lines.append("VERDICT non-member (bounded-complete)")
            return lines, EXIT_NEGATIVE
        lines.append(f"VERDICT non-member evidence (exhausted at {outcome.width}x{outcome.height})")
        return lines, EXIT_INCONCLUSIVE
    return ["RESULT budget", f"NODES {outcome.nodes}", f"REASON {outcome.reason}", "VERDICT inconclusive"], (
        EXIT_INCONCLUSIVE
    )


def cmd_search_b1(args, out, err, stdin) -> int:
    budget = _budget(args, args.helly)
    g = _load(args.graph, stdin, parse_graph)
    outcome = search_b1(g, budget)
    lines, code = _outcome_lines(outcome, g.n)
    lines.insert(1, f"MODEL {'helly-b1' if args.helly else 'b1'}")
    report = "\n".join(lines) + "\n"
    if outcome.kind == "found":
        text = format_representation(outcome.rep)
        if args.emit:
            with open(args.emit, "w") as fh:
                fh.write(text)
            out.write(report)
        else:
            out.write(text)
            err.write(report)
    else:
        out.write(report)
    return code


def _evidence(g: Graph, args, catalog):
    certified = certify_not_b1(g, catalog).certified
    search = helly = None
    if args.search and not certified:
        search = search_b1(g, _budget(args))
        if search.kind == "found":
            helly = search_b1(g, _budget(args, True))
    return classify(g, search=search, helly_search=helly, certified_not_b1=certified, catalog=catalog)


def cmd_classify(args, out, err, stdin) -> int:
    g = _load(args.graph, stdin, parse_graph)
    membership = _evidence(g, args, _catalog(args))
    out.write("\n".join([f"VERTICES {g.n}", f"EDGES {g.m}"] + membership.report()) + "\n")
    return EXIT_OK


def cmd_venn(args, out, err, stdin) -> int:
    g = _load(args.graph, stdin, parse_graph)
    membership = _evidence(g, args, _catalog(args))
    out.write("\n".join(membership.report()) + "\n")
    try:
        region = venn_region(g, membership)
    except Ambiguous as exc:
        out.write(f"REGION ambiguous\nCANDIDATES {' '.join(map(str, exc.candidates))}\n")
        return EXIT_INCONCLUSIVE
    out.write(f"REGION {region}\n")
    return EXIT_OK


def _edge_text(e) -> str:
    return f"({e.a.x},{e.a.y})-({e.b.x},{e.b.y})"


def cmd_check_rep(args, out, err, stdin) -> int:
    rep = _load(args.rep, stdin, parse_representation)
    g = intersection_graph(rep)
    lines = [f"GRID {rep.width}x{rep.height}", f"VERTICES {g.n}", f"EDGES {g.m}"]
    lines += [f"EDGE {u} {v}" for u, v in g.edges()]
    for clique in maximal_cliques(g):
        cls = classify_clique(rep, clique)
        members = " ".join(map(str, clique))
        if cls.kind == "edge":
            lines.append(f"CLIQUE {members} : edge {_edge_text(cls.edge)}")
        elif cls.kind == "claw":
            lines.append(f"CLIQUE {members} : claw center ({cls.center.x},{cls.center.y})")
        else:
            lines.append(f"CLIQUE {members} : {cls.kind}")
    for pie in find_pies(rep):
        lines.append(
            f"PIE {pie.kind} center ({pie.center.x},{pie.center.y}) vertices {' '.join(map(str, pie.vertices))}"
        )
    helly = is_helly(rep)
    lines.append(f"HELLY {'yes' if helly else 'no'}")
    if not helly:
        lines.append(f"HELLY_WITNESS {' '.join(map(str, helly.witness))}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_render(args, out, err, stdin) -> int:
    rep = _load(args.rep, stdin, parse_representation)
    out.write(render(rep, args.format))
    return EXIT_OK


def cmd_hellify(args, out, err, stdin) -> int:
    rep = _load(args.rep, stdin, parse_representation)
    try:
        result = hellify(rep)
    except DiamondWitness as exc:
        out.write(f"RESULT diamond\nDIAMOND {' '.join(map(str, exc.vertices))}\n")
        return EXIT_NEGATIVE
    out.write(format_representation(result))
    return EXIT_OK


def cmd_construct(args, out, err, stdin) -> int:
    g = _load(args.graph, stdin, parse_graph)
    build = construct_block if args.kind == "block" else construct_cactus
    try:
        rep = build(g)
    except (NotBlockGraph, NotCactus) as exc:
        out.write(f"RESULT not-{args.kind}\nREASON {exc}\n")
        return EXIT_NEGATIVE
    out.write(format_representation(rep))
    return EXIT_OK


def cmd_certify(args, out, err, stdin) -> int:
    g = _load(args.graph, stdin, parse_graph)
    catalog = _catalog(args)
    report = certify_not_b1(g, catalog)
    lines = report.lines()
    if args.helly:
        lines[-1:-1] = [c.line() for c in helly_obstructions(g, catalog)]
    out.write("\n".join(lines) + "\n")
    return report.exit_code


def cmd_tree_search(args, out, err, stdin) -> int:
    g = _load(args.graph, stdin, parse_graph)
    cap = args.max_nodes
    if cap is None and os.environ.get("EPGLAB_MAX_NODES"):
        cap = int(os.environ["EPGLAB_MAX_NODES"])
    outcome = search_tree_rep(g, args.mode, args.host_bound, args.degree_bound, cap)
    if outcome.kind == "found":
        text = format_tree_rep(outcome.rep)
        report = f"RESULT found\nMODE {args.mode}\nHOST {outcome.rep.host.n}\nNODES {outcome.nodes}\n"
        if args.emit:
            with open(args.emit, "w") as fh:
                fh.write(text)
            out.write(report)
        else:
            out.write(text)
            err.write(report)
        return EXIT_OK
    if outcome.kind == "exhausted":
        out.write(f"RESULT exhausted\nMODE {args.mode}\nHOST_BOUND {outcome.host_bound}\nNODES {outcome.nodes}\n")
    else:
        out.write(f"RESULT budget\nMODE {args.mode}\nHOST {outcome.host_size}\nNODES {outcome.nodes}\n")
    return EXIT_INCONCLUSIVE


# --------------------------------------------------------------------------
# argument grammar
# --------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _seconds(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected seconds, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="epglab", description="Single-bend grid path (B1-EPG) toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def search_flags(sp):
        sp.add_argument("--grid", metavar="WxH", help="grid bound in points per side (default 3n x 3n)")
        sp.add_argument("--max-nodes", type=_positive, metavar="N", help="node cap (env EPGLAB_MAX_NODES)")
        sp.add_argument("--max-seconds", type=_seconds, metavar="S", help="wall-clock cap")

    sp = sub.add_parser("corpus", help="emit a generated graph family")
    sp.add_argument("family", help="one of: " + ", ".join(FAMILY_NAMES))
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--catalog", metavar="FILE")
    sp.set_defaults(func=cmd_corpus)

    for name, func, text in (("classify", cmd_classify, "class membership report"), ("venn", cmd_venn, "class-diagram region")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("graph")
        sp.add_argument("--catalog", metavar="FILE")
        sp.add_argument("--no-search", dest="search", action="store_false", help="skip the grid searches")
        search_flags(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("check-rep", help="validate a representation and report cliques, pies, Helly")
    sp.add_argument("rep")
    sp.set_defaults(func=cmd_check_rep)

    sp = sub.add_parser("render", help="draw a representation")
    sp.add_argument("rep")
    sp.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("search-b1", help="search for a representation on a bounded grid")
    sp.add_argument("graph")
    sp.add_argument("--helly", action="store_true", help="require the Helly property")
    search_flags(sp)
    sp.add_argument("--seed", type=int, default=0, help="reserved; the search is deterministic")
    sp.add_argument("--emit", metavar="FILE", help="write the representation here instead of stdout")
    sp.set_defaults(func=cmd_search_b1)

    sp = sub.add_parser("hellify", help="turn a representation of a diamond-free graph into a Helly one")
    sp.add_argument("rep")
    sp.set_defaults(func=cmd_hellify)

    sp = sub.add_parser("construct", help="direct Helly construction for block graphs and cacti")
    sp.add_argument("kind", choices=("block", "cactus"))
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("certify", help="certificates that a graph is not B1-EPG")
    sp.add_argument("graph")
    sp.add_argument("--catalog", metavar="FILE", help="catalog file (default: the packaged one)")
    sp.add_argument("--helly", action="store_true", help="also list Helly obstructions")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("tree-search", help="search for a path-on-tree representation")
    sp.add_argument("graph")
    sp.add_argument("--mode", choices=("vpt", "ept"), required=True)
    sp.add_argument("--host-bound", type=_positive, metavar="N", help="largest host tree (default n + 3)")
    sp.add_argument("--degree-bound", type=_positive, metavar="D")
    sp.add_argument("--max-nodes", type=_positive, metavar="N")
    sp.add_argument("--emit", metavar="FILE")
    sp.set_defaults(func=cmd_tree_search)
    return p


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None,
         stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out, err, stdin)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except (BadParameter, RangeError, CatalogMissing, ValueError) as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except EpglabError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
