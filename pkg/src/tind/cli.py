"""Command-line entry point.

Exit status: 0 on success or IN_CLASS, 2 on NOT_IN_CLASS (reason on stdout),
1 on input errors (message on stderr prefixed E_FORMAT, E_PRECOND or E_IO).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional

from . import generators, oracles
from .classes import PIPELINES
from .connectivity import block_cutpoint_tree, check_spqr_invariants, format_blocks, format_spqr, spqr_tree
from .decomp import format_decomposition, parse_decomposition, report, validate
from .errors import FormatError, PreconditionError
from .graph import Graph, _data_lines, parse_graph, parse_weights, serialize_graph
from .solver import independent_packing, mwis_td


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fmt(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def _class_decomposition(g: Graph, args):
    """Run the selected pipeline; NOT_IN_CLASS ends the run with exit 2."""
    if args.cls == "k2q" and args.q is None:
        raise PreconditionError("--q is required with --class k2q")
    cert = PIPELINES[args.cls](g, args.q, args.robust)
    if not cert.in_class:
        print(f"NOT_IN_CLASS {cert.reason}")
        raise _Exit(2)
    return cert.decomposition


def _given_or_class(g: Graph, args):
    if args.td is not None:
        if args.k is None:
            raise PreconditionError("--k is required with --td")
        d = parse_decomposition(_read(args.td))
        res = validate(g, d)
        if not res:
            raise PreconditionError(f"invalid decomposition ({res.axiom}): {res.message}")
        return d, args.k
    if args.cls is None:
        raise PreconditionError("give either --td with --k or --class")
    d = _class_decomposition(g, args)
    return d, report(g, d).residual_independence_number


def cmd_decompose(args) -> int:
    g = parse_graph(_read(args.graph))
    d = _class_decomposition(g, args)
    _write(args.out, format_decomposition(d, g.n))
    print("IN_CLASS")
    return 0


def cmd_validate(args) -> int:
    g = parse_graph(_read(args.graph))
    d = parse_decomposition(_read(args.td))
    res = validate(g, d)
    if not res:
        print(f"INVALID {res.axiom} {res.message}")
        return 1
    r = report(g, d)
    print(f"VALID nodes {r.node_count} width {r.max_bag_size} alpha {r.independence_number} "
          f"residual {r.residual_independence_number} ell {r.ell}")
    return 0


def _weights(path: Optional[str], count: int):
    if path is None:
        return {i: Fraction(1) for i in range(1, count + 1)}
    return parse_weights(_read(path), count)


def cmd_mwis(args) -> int:
    g = parse_graph(_read(args.graph))
    w = _weights(args.weights, g.n)
    d, k = _given_or_class(g, args)
    best, weight = mwis_td(g, w, d, k)
    print(f"WEIGHT {_fmt(weight)}")
    print("SET " + " ".join(map(str, sorted(best))))
    return 0


def _parse_subgraphs(text) -> List[frozenset]:
    out = []
    for lineno, tok in _data_lines(text):
        try:
            out.append(frozenset(int(x) for x in tok))
        except ValueError:
            raise FormatError(f"line {lineno}: expected vertex ids") from None
    return out


def cmd_pack(args) -> int:
    g = parse_graph(_read(args.graph))
    hs = _parse_subgraphs(_read(args.subgraphs))
    w = _weights(args.weights, len(hs))
    d, _ = _given_or_class(g, args)
    chosen, weight = independent_packing(g, hs, w, d)
    print(f"WEIGHT {_fmt(weight)}")
    print("SET " + " ".join(map(str, sorted(chosen))))
    return 0


def cmd_spqr(args) -> int:
    g = parse_graph(_read(args.graph))
    s = spqr_tree(g)
    _write(args.out, format_spqr(s))
    rep = check_spqr_invariants(s, g)
    for c in rep.failed():
        print(f"# check failed: {c.name} {c.detail}", file=sys.stderr)
    return 0 if rep.ok else 1


def cmd_blocks(args) -> int:
    g = parse_graph(_read(args.graph))
    _write(args.out, format_blocks(block_cutpoint_tree(g)))
    return 0


def cmd_oracle(args) -> int:
    g = parse_graph(_read(args.graph))
    q = args.query
    if q == "alpha":
        print(oracles.alpha_exact(g))
    elif q == "mms":
        print(oracles.mms(g))
    elif q == "alpha-pmc":
        print(oracles.alpha_pmc(g))
    elif q in ("minseps", "pmcs"):
        sets = oracles.enumerate_minimal_separators(g) if q == "minseps" else oracles.enumerate_pmcs(g)
        for s in sets:
            print(" ".join(map(str, sorted(s))))
    elif q == "mwis":
        best, weight = oracles.mwis_bruteforce(g, _weights(args.weights, g.n))
        print(f"WEIGHT {_fmt(weight)}")
        print("SET " + " ".join(map(str, sorted(best))))
    elif q == "minor":
        if args.pattern is None:
            raise PreconditionError("--pattern is required for the minor query")
        model = oracles.find_induced_minor_model(g, parse_graph(_read(args.pattern)))
        if model is None:
            print("NO_MODEL")
        else:
            for h in sorted(model.branch):
                print(f"{h}: " + " ".join(map(str, sorted(model.branch[h]))))
    return 0


def cmd_generate(args) -> int:
    params = {}
    if args.family.startswith("random_"):
        params["seed"] = args.seed
    _write(args.out, serialize_graph(generators.generate(args.family, *args.params, **params)))
    return 0


def _num(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1; exit 2 stays reserved for NOT_IN_CLASS."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"E_PRECOND: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tind", description="Refined tree decompositions and independence bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def class_flags(sp, required):
        sp.add_argument("--class", dest="cls", choices=sorted(PIPELINES), required=required)
        sp.add_argument("--q", type=int)
        sp.add_argument("--robust", action="store_true")

    sp = sub.add_parser("decompose", help="run a class pipeline")
    sp.add_argument("graph")
    class_flags(sp, True)
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("validate", help="check a decomposition against a graph")
    sp.add_argument("graph")
    sp.add_argument("td")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("mwis", help="maximum-weight independent set")
    sp.add_argument("graph")
    sp.add_argument("--weights")
    sp.add_argument("--td")
    sp.add_argument("--k", type=int)
    class_flags(sp, False)
    sp.set_defaults(func=cmd_mwis)

    sp = sub.add_parser("pack", help="maximum-weight independent packing")
    sp.add_argument("graph")
    sp.add_argument("--subgraphs", required=True)
    sp.add_argument("--weights")
    sp.add_argument("--td")
    sp.add_argument("--k", type=int)
    class_flags(sp, False)
    sp.set_defaults(func=cmd_pack)

    for name, fn in (("spqr", cmd_spqr), ("blocks", cmd_blocks)):
        sp = sub.add_parser(name, help=f"print the {name} tree")
        sp.add_argument("graph")
        sp.add_argument("-o", "--out")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("oracle", help="exponential-time ground truth on small graphs")
    sp.add_argument("query", choices=["alpha", "mms", "alpha-pmc", "minseps", "pmcs", "mwis", "minor"])
    sp.add_argument("graph")
    sp.add_argument("--pattern")
    sp.add_argument("--weights")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("generate", help="write a named or seeded random graph")
    sp.add_argument("family", choices=sorted(generators.FAMILIES))
    sp.add_argument("params", nargs="*", type=_num)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_generate)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        oracles.oracle_limit()
    except ValueError:
        print("E_PRECOND: TIND_ORACLE_LIMIT must be an integer", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _Exit as e:
        return e.code
    except FormatError as e:
        print(f"E_FORMAT: {e}", file=sys.stderr)
    except PreconditionError as e:
        print(f"E_PRECOND: {e}", file=sys.stderr)
    except OSError as e:
        print(f"E_IO: {e}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
