"""Command-line entry point: wpo-gap-lab <command> [options]."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dilator import MULTISET
from .errors import BudgetError, DilatorLawError, InputError, TargetError, TermValidationError
from .gaptrees import (GapParams, enumerate_gap_trees, format_tree, gap_leq, is_gap_tree,
                       parse_tree, tree_target)
from .harness import good_pair, load_budget, suite_all, SUITES
from .kruskal import enumerate_terms, fold_initial, parse_term, term_leq, term_system
from .multiset import ms_enumerate, ms_leq, parse_multiset
from .oracle import format_witness, gap_embed, nodetree_of_gaptree
from .order import EMPTY, parse_poset

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3


def _poset(args):
    if not args.poset:
        return EMPTY
    try:
        text = Path(args.poset).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.poset}: {exc.strerror}") from None
    return parse_poset(text)


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _relation(le: bool, ge: bool) -> str:
    if le and ge:
        return "EQ"
    if le:
        return "LE"
    if ge:
        return "GE"
    return "INCOMP"


def _parse_pair(args, X):
    kind = args.kind
    if kind == "gap":
        params = GapParams(args.n, X)
        s, t = parse_tree(args.left), parse_tree(args.right)
        return lambda a, b: gap_leq(params, a, b), s, t
    if kind == "term":
        S = term_system(X, MULTISET)
        s, t = parse_term(args.left), parse_term(args.right)
        return lambda a, b: term_leq(S, a, b), s, t
    s, t = parse_multiset(args.left), parse_multiset(args.right)
    return lambda a, b: ms_leq(X, a, b), s, t


def cmd_compare(args) -> int:
    leq, s, t = _parse_pair(args, _poset(args))
    le, ge = leq(s, t), leq(t, s)
    rel = _relation(le, ge)
    _emit(args, {"relation": rel, "le": le, "ge": ge}, rel)
    return EXIT_OK if le else EXIT_FALSE


def cmd_oracle(args) -> int:
    s, t = parse_tree(args.left), parse_tree(args.right)
    for u in (s, t):
        if not is_gap_tree(args.n, EMPTY, u):
            raise InputError(f"{format_tree(u)} is not a tree with labels below {args.n}")
    w = gap_embed(args.n, nodetree_of_gaptree(s), nodetree_of_gaptree(t))
    if args.format == "json":
        print(json.dumps({"witness": None if w is None else list(w)}))
    else:
        print("none" if w is None else format_witness(w))
    return EXIT_FALSE if w is None else EXIT_OK


def cmd_enum(args) -> int:
    X = _poset(args)
    if args.kind == "gap":
        items = [format_tree(t) for t in
                 enumerate_gap_trees(GapParams(args.n, X), args.max, minus=args.minus)]
    elif args.kind == "term":
        items = [str(t) for t in
                 enumerate_terms(term_system(X, MULTISET), args.height, args.max)]
    else:
        items = [str(m) for m in ms_enumerate(X, args.max)]
    if args.format == "json":
        print(json.dumps({"count": len(items), "items": items}))
    elif args.count:
        print(len(items))
    else:
        for line in items:
            print(line)
    return EXIT_OK


def cmd_fold(args) -> int:
    X = _poset(args)
    S = term_system(X, MULTISET)
    s = parse_term(args.term)
    bad = S.validate(s)
    if bad:
        raise TermValidationError(str(bad[0]))
    tree = format_tree(fold_initial(S, tree_target(X), s))
    _emit(args, {"term": str(s), "tree": tree}, tree)
    return EXIT_OK


def cmd_selftest(args) -> int:
    budget = load_budget(args.budget)
    reports = suite_all(budget, args.suite)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=1))
    else:
        for r in reports:
            print(r.line())
            for v in sorted(r.violations)[:20]:
                print("   ", v)
            if r.note:
                print("   ", r.note)
    if any(r.violations for r in reports):
        return EXIT_FALSE
    if any(r.incomplete for r in reports):
        return EXIT_INCOMPLETE
    return EXIT_OK


def cmd_goodpair(args) -> int:
    params = GapParams(args.n, _poset(args))
    seq = [parse_tree(t) for t in args.trees]
    pair = good_pair(seq, params)
    if args.format == "json":
        print(json.dumps({"pair": None if pair is None else list(pair)}))
    else:
        print("none" if pair is None else f"{pair[0]} {pair[1]}")
    return EXIT_FALSE if pair is None else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="number of labels (default 1)")
    common.add_argument("--poset", metavar="FILE", help="base order file (default: empty order)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="wpo-gap-lab",
                                description="Gap orders, Kruskal fixed points and their oracles.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compare", parents=[common], help="compare two values in both directions")
    c.add_argument("--kind", choices=("gap", "term", "ms"), default="gap")
    c.add_argument("left")
    c.add_argument("right")
    c.set_defaults(func=cmd_compare)

    o = sub.add_parser("oracle", parents=[common], help="brute-force gap embedding witness")
    o.add_argument("left")
    o.add_argument("right")
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("enum", parents=[common], help="list a finite universe")
    e.add_argument("--kind", choices=("gap", "term", "ms"), default="gap")
    e.add_argument("--max", type=int, default=3,
                   help="max nodes (gap), max payload (term) or max entries (ms)")
    e.add_argument("--height", type=int, default=1, help="max term height")
    e.add_argument("--minus", action="store_true", help="only trees with root label 0 or leaves")
    e.add_argument("--count", action="store_true", help="print only the count")
    e.set_defaults(func=cmd_enum)

    f = sub.add_parser("fold", parents=[common], help="fold an M-term onto its labelled tree")
    f.add_argument("term")
    f.set_defaults(func=cmd_fold)

    s = sub.add_parser("selftest", parents=[common], help="run the property suites")
    s.add_argument("--budget", default="default", help="'default', 'zero' or a JSON file")
    s.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="run only this suite (repeatable)")
    s.set_defaults(func=cmd_selftest)

    g = sub.add_parser("goodpair", parents=[common], help="least good pair of a tree sequence")
    g.add_argument("trees", nargs="*")
    g.set_defaults(func=cmd_goodpair)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 0:
        parser.error("--n must be >= 0")
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (InputError, TermValidationError, DilatorLawError, TargetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
