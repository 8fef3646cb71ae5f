"""Command-line interface.

Exit codes: 0 success or True, 1 decided False, 2 parse or usage error,
3 budget exhausted (unknown).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import catalog
from .classify import DEFAULT_CAP, classify_element
from .core import (Presentation, Word, act, format_tree_word, parse_tree_word, root_perm,
                   section)
from .errors import BudgetExceeded, PreconditionError, PresentationError
from .solver import DEFAULT_BUDGET, are_equal, is_trivial, order_up_to
from .structure import cycle_graph, group_report, orbits_on_level
from .textformat import format_presentation, load, parse_word
from .transform import reduced_form, restrict_level

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


def _word(P: Presentation, text: str) -> Word:
    return parse_word(text, set(P.names))


def _vertex(P: Presentation, text: str) -> tuple[int, ...]:
    v = parse_tree_word(text)
    for x in v:
        P.check_letter(x)
    return v


def _show_vertex(v) -> str:
    return format_tree_word(v) if v else "the root"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict(v: bool | None) -> object:
    return "unknown" if v is None else v


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_act(args) -> int:
    P = load(args.file)
    print(format_tree_word(act(P, _word(P, args.element), _vertex(P, args.vertex))))
    return EXIT_OK


def cmd_section(args) -> int:
    P = load(args.file)
    print(section(P, _word(P, args.element), _vertex(P, args.vertex)))
    return EXIT_OK


def _decision_exit(dec, P: Presentation, g: Word) -> int:
    if dec.is_true:
        print("True")
        return EXIT_OK
    if dec.is_false:
        v = dec.witness
        perm = root_perm(P, section(P, g, v))
        print(f"False: section at {_show_vertex(v)} has root permutation {perm}")
        return EXIT_FALSE
    print(f"unknown: budget exhausted after {dec.budget_spent} nodes")
    return EXIT_UNKNOWN


def cmd_trivial(args) -> int:
    P = load(args.file)
    g = _word(P, args.element)
    return _decision_exit(is_trivial(P, g, args.budget), P, g)


def cmd_equal(args) -> int:
    P = load(args.file)
    g, h = _word(P, args.element), _word(P, args.other)
    return _decision_exit(are_equal(P, g, h, args.budget), P, g * h.inverse())


def cmd_order(args) -> int:
    P = load(args.file)
    dec = order_up_to(P, _word(P, args.element), args.max, args.budget)
    if dec.is_true:
        print(f"order {dec.witness}")
        return EXIT_OK
    if dec.is_false:
        print(f"no order ≤ {args.max}")
        return EXIT_FALSE
    print(f"unknown: budget exhausted after {dec.budget_spent} nodes")
    return EXIT_UNKNOWN


def _element_doc(P: Presentation, g: Word, cap: int, budget: int) -> dict:
    ec = classify_element(P, g, cap, budget)
    d = ec.directed
    return {
        "name": str(g),
        "finitary": {"verdict": _verdict(ec.finitary.verdict), "depth": ec.finitary.depth},
        "directed": {
            "verdict": _verdict(d.verdict),
            "period": d.period,
            "active_vertex": None if d.active_vertex is None else format_tree_word(d.active_vertex),
            "strongly_directed": d.strongly_directed,
            "strongly_active": d.strongly_active,
        },
        "odometer": _verdict(ec.odometer),
        "bounded": {"verdict": _verdict(ec.bounded_finite_state.verdict),
                    "level": ec.bounded_finite_state.level},
        "budget_spent": ec.finitary.budget_spent,
    }


def classify_document(P: Presentation, words: Sequence[Word], cap: int, budget: int) -> dict:
    rep = group_report(P, budget=budget)
    sr = rep.self_replicating
    return {
        "alphabet": P.degree,
        "generators": [_element_doc(P, g, cap, budget) for g in words],
        "group": {
            "reduced_form": rep.reduced_form,
            "kneading": _verdict(rep.kneading),
            "kneading_failed": rep.kneading_failed,
            "generalized_basilica": rep.generalized_basilica,
            "balanced": rep.balanced,
            "abelian_wreath_type": _verdict(rep.abelian_wreath_type),
            "level_transitive_up_to": rep.level_transitive_up_to,
            "self_replicating": {
                "verdict": _verdict(sr.decision.verdict),
                "certificate": sr.kind,
                "certificates": [c.to_dict() for c in sr.certificates],
            },
        },
        "budgets": {"budget": budget, "max_depth": cap},
    }


def cmd_classify(args) -> int:
    P = load(args.file)
    words = [_word(P, e) for e in args.element] if args.element else [Word.gen(n) for n in P.names]
    doc = classify_document(P, words, args.max_depth, args.budget)
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
        return EXIT_OK
    for g in doc["generators"]:
        d = g["directed"]
        parts = [f"finitary={g['finitary']['verdict']}"]
        if g["finitary"]["depth"] is not None:
            parts.append(f"depth={g['finitary']['depth']}")
        parts.append(f"directed={d['verdict']}")
        if d["period"] is not None:
            parts.append(f"period={d['period']} active={d['active_vertex']}")
        parts.append(f"odometer={g['odometer']}")
        parts.append(f"bounded={g['bounded']['verdict']}")
        print(f"{g['name']}: " + " ".join(parts))
    grp = doc["group"]
    for key in ("reduced_form", "kneading", "generalized_basilica", "balanced",
                "abelian_wreath_type", "level_transitive_up_to"):
        print(f"{key}: {grp[key]}")
    sr = grp["self_replicating"]
    print(f"self_replicating: {sr['verdict']} ({sr['certificate']})")
    return EXIT_OK


def cmd_rk(args) -> int:
    P = load(args.file)
    _emit(format_presentation(restrict_level(P, args.k)), args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    P = load(args.file)
    res = reduced_form(P, cap=args.max_depth, budget=args.budget)
    lines = [f"# reduced form at level k = {res.k}; Z = {{{', '.join(res.Z)}}}"]
    for name, (perm, secs) in res.embedding.items():
        lines.append(f"# {name} -> {perm} ({', '.join(map(str, secs))})")
    _emit("\n".join(lines) + "\n" + format_presentation(res.H), args.output)
    return EXIT_OK


def cmd_cyclegraph(args) -> int:
    P = load(args.file)
    gens = args.generators.split(",") if args.generators else P.names
    G = cycle_graph([P[n].perm for n in gens])
    if args.json:
        print(G.to_json())
    else:
        print(f"vertices {G.n_vertices}, edges {G.n_edges}, "
              f"connected {G.is_connected()}, tree {G.is_tree()}")
    if args.dot:
        if args.dot == "-":
            sys.stdout.write(G.to_dot())
        else:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(G.to_dot())
    return EXIT_OK


def cmd_orbits(args) -> int:
    P = load(args.file)
    gens = [_word(P, e) for e in args.element] if args.element else [Word.gen(n) for n in P.names]
    for orbit in orbits_on_level(P, gens, args.n):
        print("{" + ", ".join(format_tree_word(v) for v in orbit) + "}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    results = catalog.verify_all()
    width = max(len(r.entry) for r in results)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        detail = f"  [{r.detail}]" if r.detail else ""
        print(f"{mark}  {r.entry:<{width}}  {r.label}{detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_FALSE


def cmd_export(args) -> int:
    try:
        entry = catalog.get_entry(args.name)
    except KeyError:
        names = ", ".join(e.name for e in catalog.all_entries())
        print(f"unknown catalog entry {args.name!r}; choose from {names}", file=sys.stderr)
        return EXIT_USAGE
    _emit(entry.text(), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="node budget for searches")
    common.add_argument("--max-depth", type=int, default=argparse.SUPPRESS,
                        help="level cap for period and depth searches")

    parser = argparse.ArgumentParser(prog="treeauto", parents=[common],
                                     description="Compute with groups of rooted-tree automorphisms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, element=False, vertex=False, file=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            p.add_argument("file", help="presentation file")
        if element:
            p.add_argument("-e", "--element", required=True, help="group word, e.g. 'a*b^-1'")
        if vertex:
            p.add_argument("-w", "--vertex", required=True, help="tree word, e.g. '1.0'")
        p.set_defaults(func=func)
        return p

    add("act", cmd_act, "image of a vertex", element=True, vertex=True)
    add("section", cmd_section, "section at a vertex", element=True, vertex=True)
    add("trivial", cmd_trivial, "decide whether a word is trivial", element=True)
    p = add("equal", cmd_equal, "decide whether two words are equal", element=True)
    p.add_argument("-f", "--other", required=True, help="second group word")
    p = add("order", cmd_order, "least n <= N with g^n = 1", element=True)
    p.add_argument("--max", type=int, default=64, help="largest order to try")
    p = add("classify", cmd_classify, "element and group report")
    p.add_argument("-e", "--element", action="append", help="element to classify (repeatable)")
    p.add_argument("--json", action="store_true", help="emit a JSON document")
    p = add("rk", cmd_rk, "restrict to the alphabet X^k")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-o", "--output")
    p = add("reduce", cmd_reduce, "construct a reduced-form presentation")
    p.add_argument("-o", "--output")
    p = add("cyclegraph", cmd_cyclegraph, "cycle graph of the root permutations")
    p.add_argument("--dot", help="write DOT to PATH ('-' for stdout)")
    p.add_argument("--json", action="store_true", help="print the JSON adjacency document")
    p.add_argument("-g", "--generators", help="comma-separated states (default: all)")
    p = add("orbits", cmd_orbits, "orbits on level n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-e", "--element", action="append", help="generator word (repeatable)")
    add("verify-paper", cmd_verify_paper, "run every catalog assertion", file=False)
    p = add("export", cmd_export, "write a catalog presentation", file=False)
    p.add_argument("name")
    p.add_argument("-o", "--output")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "budget"):
        args.budget = DEFAULT_BUDGET
    if not hasattr(args, "max_depth"):
        args.max_depth = DEFAULT_CAP
    try:
        return args.func(args)
    except (PresentationError, PreconditionError, OSError) as exc:
        print(f"treeauto: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"unknown: {exc}")
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
