"""Command-line front end: ``markedpoly <verb> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import graph as g
from . import harness, invariants as inv, mprime as mp, reconstruct as rc, star_expansion as se, symfunc as sf
from .io import graph_to_json, read_graph
from .polyring import format_zpoly, parse_zpoly

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_STANLEY = 3
EXIT_INVARIANTS = 4
EXIT_RECONSTRUCT = 5


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _graph(args):
    return read_graph(_read_text(args.input), args.format)


def _cmd_csf(args) -> int:
    G = _graph(args)
    if args.basis == "p":
        print(sf.csf_power(G))
        return EXIT_OK
    if G.is_simple() and G.is_unweighted():
        tree, X = se.dnc_expand(G, emit_tree=args.emit_tree)
        if tree is not None:
            print(tree.render())
    else:
        if args.emit_tree:
            raise g.GraphError("--emit-tree needs a simple unweighted graph")
        X = sf.p_to_st(sf.csf_power(G))
    print(X)
    return EXIT_OK


def _cmd_poly(fn):
    def run(args) -> int:
        print(format_zpoly(fn(_graph(args))))
        return EXIT_OK

    return run


def _cmd_mpoly(args) -> int:
    G = _graph(args)
    engine = {"states": inv.m_poly_states, "dc": inv.m_poly_dc, "bond": inv.m_poly_bond}[args.engine]
    print(format_zpoly(engine(G)))
    return EXIT_OK


def _cmd_vpoly(args) -> int:
    print(inv.format_vpoly(inv.v_poly_dc(_graph(args))))
    return EXIT_OK


def _cmd_mprime(args) -> int:
    order = {"lex": mp.MarkOrder.lex, "revlex": mp.MarkOrder.reverse_lex}[args.order]()
    print(format_zpoly(mp.m_prime(_graph(args), order)))
    return EXIT_OK


def _cmd_core(args) -> int:
    print(graph_to_json(g.core(_graph(args)).normalized()))
    return EXIT_OK


def _cmd_reconstruct(args) -> int:
    text = _read_text(args.input)
    try:
        if args.source == "csf":
            T = rc.tree_from_csf_star(sf.parse_symfn(text, "st"))
        elif args.source == "d":
            T = rc.tree_from_d(parse_zpoly(text))
        else:
            T = rc.tree_from_m(parse_zpoly(text))
    except rc.ReconstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RECONSTRUCT
    print(graph_to_json(T.normalized()))
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.suite == "stanley":
        rep = harness.verify_stanley(args.max_n)
        code = EXIT_STANLEY
    else:
        rep = harness.verify_invariants(args.seed, args.trials)
        code = EXIT_INVARIANTS
    print(rep.to_json(include_timing=args.timing))
    return EXIT_OK if rep.ok else code


def _bench_cases():
    tri = g.MarkedGraph.from_edge_list([g.Mark(4, 1), g.Mark(1), g.Mark(2)], [(0, 1), (1, 2), (0, 2)])
    path = g.MarkedGraph.weighted([4, 1, 2], [(0, 1), (1, 2)])
    pend = g.MarkedGraph.unweighted(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    k6 = g.MarkedGraph.unweighted(6, [(i, j) for i in range(6) for j in range(i + 1, 6)])
    two = rc.build_two_star(2, [6, 5, 3], 2, [2, 3, 4])
    return [
        ("m_poly marked triangle", lambda: inv.m_poly(tri)),
        ("w_poly path 4-1-2", lambda: inv.w_poly(path)),
        ("d_poly marked triangle", lambda: inv.d_poly(tri)),
        ("dnc_expand triangle+pendant", lambda: se.dnc_expand(pend, memo=False)),
        ("dnc_expand K6", lambda: se.dnc_expand(k6, memo=False)),
        ("csf_power K6", lambda: sf.csf_power(k6)),
        ("tree_from_d 2-star N=27", lambda: rc.tree_from_d(inv.d_poly(two))),
    ]


def _cmd_bench(args) -> int:
    out = {}
    for name, fn in _bench_cases():
        best = None
        for _ in range(args.repeat):
            t0 = time.perf_counter_ns()
            fn()
            dt = time.perf_counter_ns() - t0
            best = dt if best is None else min(best, dt)
        out[name] = best
    print(json.dumps({"command": "bench", "repeat": args.repeat, "best_ns": out}, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="markedpoly", description="Marked graph polynomials and star expansions.")
    sub = p.add_subparsers(dest="verb", required=True)

    def graph_verb(name, handler, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--input", default="-", help="file path, or - for stdin (default)")
        sp.add_argument("--format", choices=("graph6", "json"), default=None,
                        help="input format (guessed when omitted)")
        sp.set_defaults(func=handler)
        return sp

    sp = graph_verb("csf", _cmd_csf, "chromatic symmetric function")
    sp.add_argument("--basis", choices=("st", "p"), default="st")
    sp.add_argument("--emit-tree", action="store_true", help="print the deletion-near-contraction tree")
    sp = graph_verb("mpoly", _cmd_mpoly, "M-polynomial")
    sp.add_argument("--engine", choices=("states", "dc", "bond"), default="states")
    graph_verb("wpoly", _cmd_poly(inv.w_poly), "W-polynomial of a weighted graph")
    graph_verb("dpoly", _cmd_poly(inv.d_poly), "D-polynomial")
    graph_verb("vpoly", _cmd_vpoly, "V-polynomial over marks with symbolic edge variables")
    sp = graph_verb("mprime", _cmd_mprime, "M'-polynomial of a marked forest")
    sp.add_argument("--order", choices=("lex", "revlex"), default="lex")
    graph_verb("core", _cmd_core, "core of a marked graph, as JSON")

    sp = sub.add_parser("reconstruct", help="recover a weighted star or 2-star")
    sp.add_argument("--from", dest="source", choices=("d", "m", "csf"), required=True)
    sp.add_argument("--input", default="-")
    sp.set_defaults(func=_cmd_reconstruct)

    sp = sub.add_parser("verify", help="verification campaigns")
    vsub = sp.add_subparsers(dest="suite", required=True)
    st = vsub.add_parser("stanley")
    st.add_argument("--max-n", type=int, default=10)
    st.add_argument("--timing", action="store_true", help="include per-phase timings in the report")
    st.set_defaults(func=_cmd_verify)
    iv = vsub.add_parser("invariants")
    iv.add_argument("--seed", type=int, default=0)
    iv.add_argument("--trials", type=int, default=50)
    iv.add_argument("--timing", action="store_true", help="include per-phase timings in the report")
    iv.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("bench", help="time the worked examples")
    sp.add_argument("--repeat", type=int, default=5)
    sp.set_defaults(func=_cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (g.GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
