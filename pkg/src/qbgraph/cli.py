"""Command line front end: build and export graphs, run queries, verify.

Exit codes: 0 success, 1 a verification suite failed, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import render
from .affine import AffineWeyl
from .level_zero import LevelZeroPoset
from .qbg import QbgPath, build_qbg
from .root_system import ConfigurationError, build_root_system
from .tilted import TiltedOrder, quantum_length
from .verify import SUITES, run_suites
from .weyl import WeylGroup


class UsageError(Exception):
    pass


def _parse_nodes(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad node list {text!r}") from exc


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _parse_word(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    return _parse_ints(text)


def _context(args):
    try:
        rs = build_root_system(args.cartan_type, args.rank)
        W = WeylGroup(rs)
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from exc
    nodes = _parse_nodes(args.parabolic)
    if any(not 1 <= j <= rs.rank for j in nodes):
        raise UsageError(f"parabolic nodes {nodes} out of range")
    return rs, W, rs.parabolic(nodes)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_qbg(args) -> int:
    rs, W, J = _context(args)
    graph = build_qbg(W, J)
    if args.format == "dot":
        _emit(args, render.graph_to_dot(graph))
    elif args.format == "json":
        _emit(args, render.graph_to_json(graph))
    else:
        _emit(args, render.graph_to_text(graph))
    return 0


def cmd_lift(args) -> int:
    rs, W, J = _context(args)
    if len(J.nodes) == rs.rank:
        raise UsageError("the parabolic set must be proper for lifting")
    graph = build_qbg(W, J)
    aw = AffineWeyl(W)
    depth = aw.lift_depth(graph)
    if args.mu:
        mu = _parse_ints(args.mu)
        if len(mu) != rs.rank:
            raise UsageError("mu has the wrong rank")
        if not aw.is_adjusted(mu, J):
            raise UsageError("mu is not J-adjusted")
        if not aw.is_superantidominant(mu, J, depth):
            raise UsageError(f"mu is not superantidominant to depth {depth}")
    else:
        mu = aw.superantidominant_mu(W.identity, J, depth)

    if args.walk:
        start = W.min_coset_rep(W.from_word(_parse_word(args.start)), J)
        cur = start.index
        edges = []
        for part in args.walk.split(";"):
            label = _parse_ints(part)
            edge = graph.edge(cur, label)
            if edge is None:
                raise UsageError(f"no edge with label {label} out of vertex {cur}")
            edges.append(edge)
            cur = edge.target
        chain = aw.lift_path(graph, QbgPath(start.index, tuple(edges)), mu)
        if args.format == "dot":
            _emit(args, render.chain_to_dot(aw, chain))
        elif args.format == "json":
            _emit(args, render.chain_to_json(aw, chain))
        else:
            _emit(args, render.chain_to_text(aw, chain))
        return 0

    z = aw.z_mu(mu, J)
    lines = []
    rows = []
    for v in graph.vertices:
        for e in graph.out[v]:
            x, y, gamma = aw.lift_edge(graph, e, z, mu)
            lines.append(
                f"{render.affine_element_text(W, x)} > "
                f"[{render.affine_root_text(gamma)}] "
                f"{render.affine_element_text(W, y)}"
            )
            rows.append(
                {
                    "upper": render.affine_element_text(W, x),
                    "lower": render.affine_element_text(W, y),
                    "label": render.affine_root_text(gamma),
                    "kind": e.kind,
                }
            )
    if args.format == "json":
        doc = {"schema": "qbgraph/lifts/1", "mu": list(mu), "covers": rows}
        _emit(args, json.dumps(doc, indent=1, sort_keys=True) + "\n")
    elif args.format == "dot":
        out = ["digraph lifts {"]
        for row in rows:
            out.append(
                f'  "{row["upper"]}" -> "{row["lower"]}" [label="{row["label"]}"];'
            )
        out.append("}")
        _emit(args, "\n".join(out) + "\n")
    else:
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_poset(args) -> int:
    try:
        rs = build_root_system(args.cartan_type, args.rank)
        W = WeylGroup(rs)
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from exc
    lam = _parse_ints(args.lam)
    if len(lam) != rs.rank:
        raise UsageError("lambda has the wrong rank")
    try:
        poset = LevelZeroPoset(W, lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.parabolic:
        if _parse_nodes(args.parabolic) != poset.J.nodes:
            raise UsageError("parabolic set disagrees with the zero set of lambda")
    if args.window < poset.d:
        raise UsageError(
            f"window {args.window} is smaller than the orbit delta step {poset.d}"
        )
    if args.format == "dot":
        _emit(args, render.slice_to_dot(poset, args.window))
    elif args.format == "json":
        _emit(args, render.slice_to_json(poset, args.window))
    else:
        lines = [
            f"# slice {args.cartan_type}{args.rank} lambda={list(lam)} "
            f"window={args.window}"
        ]
        for mu in poset.slice_elements(args.window):
            covers = ", ".join(
                f"{render.weight_text(poset, c.upper)} [{render.affine_root_text(c.label)}]"
                for c in poset.covers(mu)
            )
            lines.append(f"{render.weight_text(poset, mu)} < {covers}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_tilted(args) -> int:
    rs, W, J = _context(args)
    graph = build_qbg(W, rs.parabolic(()))
    order = TiltedOrder(graph)
    u = W.from_word(_parse_word(args.u))
    z = W.from_word(_parse_word(args.z))
    x = order.coset_min(u.index, z, J)
    lines = [
        f"base    : {W.describe(u)}",
        f"coset   : {W.describe(z)} W_J, J={list(J.nodes)}",
        f"minimum : {W.describe(x)}",
        f"distance: {graph.distance(u.index, x.index)}",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_qlen(args) -> int:
    rs, W, J = _context(args)
    graph = build_qbg(W, J)
    u = W.min_coset_rep(W.from_word(_parse_word(args.u)), J)
    value = quantum_length(graph, u.index)
    _emit(args, f"{value}\n")
    return 0


def cmd_verify(args) -> int:
    if args.suite == "all":
        names = list(SUITES)
    else:
        names = [s.strip() for s in args.suite.split(",")]
        unknown = [s for s in names if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suites {unknown}; pick from {sorted(SUITES)}")
    types = _parse_types(args.types) if args.types else None
    results = run_suites(names, types=types, jobs=args.jobs)
    lines = []
    ok = True
    for res in results:
        lines.append(f"suite {res.suite}: {res.claim}")
        for case in res.cases:
            status = "pass" if case.passed else "FAIL"
            detail = f" ({case.detail})" if case.detail else ""
            lines.append(f"  {case.name}: {status}{detail}")
        lines.append(f"RESULT suite={res.suite} {'pass' if res.passed else 'FAIL'}")
        ok = ok and res.passed
    if args.format == "json":
        doc = {
            "schema": "qbgraph/verify/1",
            "passed": ok,
            "suites": [
                {
                    "suite": r.suite,
                    "claim": r.claim,
                    "passed": r.passed,
                    "cases": [
                        {"name": c.name, "passed": c.passed, "detail": c.detail}
                        for c in r.cases
                    ],
                }
                for r in results
            ],
        }
        _emit(args, json.dumps(doc, indent=1, sort_keys=True) + "\n")
    else:
        _emit(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def _parse_types(text: str) -> list[tuple[str, int]]:
    """Parse 'A2,B2' or 'A1..A4,G2' into (type, rank) pairs."""
    out: list[tuple[str, int]] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo, hi = chunk.split("..")
            t = lo[0]
            if hi[0] != t:
                raise UsageError(f"bad type range {chunk!r}")
            for r in range(int(lo[1:]), int(hi[1:]) + 1):
                out.append((t, r))
        elif chunk:
            out.append((chunk[0], int(chunk[1:])))
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbgraph",
        description="exact quantum Bruhat graph engine and verification harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, parabolic=True):
        p.add_argument("--type", dest="cartan_type", required=True,
                       choices=list("ABCDEFG"))
        p.add_argument("--rank", type=int, required=True)
        if parabolic:
            p.add_argument("--parabolic", default="",
                           help="comma separated Dynkin nodes (Bourbaki numbering)")
        p.add_argument("--format", choices=("dot", "json", "text"), default="text")
        p.add_argument("--out", default="", help="output file (default stdout)")

    p = sub.add_parser("qbg", help="export the (parabolic) quantum Bruhat graph")
    common(p)
    p.set_defaults(fn=cmd_qbg)

    p = sub.add_parser("pqbg", help="alias of qbg")
    common(p)
    p.set_defaults(fn=cmd_qbg)

    p = sub.add_parser("lift", help="lift edges or a walk into the affine order")
    common(p)
    p.add_argument("--mu", default="", help="translation part, simple-coroot coords")
    p.add_argument("--start", default="", help="start vertex as a reduced word")
    p.add_argument("--walk", default="",
                   help="semicolon separated edge labels, each a coefficient list")
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("poset", help="export a slice of the level-zero weight poset")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True,
                   help="dominant weight over the fundamental weights")
    p.add_argument("--window", type=int, default=3)
    p.set_defaults(fn=cmd_poset)

    p = sub.add_parser("tilted", help="coset minimum in the tilted order")
    common(p)
    p.add_argument("--u", default="", help="base point as a reduced word")
    p.add_argument("--z", default="", help="coset representative as a reduced word")
    p.set_defaults(fn=cmd_tilted)

    p = sub.add_parser("qlen", help="quantum length of a coset representative")
    common(p)
    p.add_argument("--u", default="", help="element as a reduced word")
    p.set_defaults(fn=cmd_qlen)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all",
                   help="comma separated suite names, or 'all'")
    p.add_argument("--types", default="",
                   help="override type list, e.g. 'A1..A4,B2,G2'")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default="")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
