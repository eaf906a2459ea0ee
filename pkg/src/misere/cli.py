"""Command-line front end: outcomes, quotients, constructions, verification.

Exit codes: 0 ok, 1 check failure, 2 parse error, 3 impossible/unavailable
target, 4 non-stabilized quotient.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .closure import closure_atoms
from .constructions import (
    ImpossibleTargetError,
    PlanUnavailableError,
    table1_set,
    target_cardinality_plan,
)
from .games import GameStore, ParseError
from .quotient import QuotientParams, compute_quotient, extract_presentation, quotient_to_json
from .verify import (
    search_size_three,
    verify_atomic_weight,
    verify_class_structure,
    verify_ender_outcomes,
    verify_flower_evaluation,
    verify_nim_strategy,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_IMPOSSIBLE = 3
EXIT_NON_STABILIZED = 4


@dataclass
class CliConfig:
    command: str
    expressions: list[str]
    target: int | None
    params: QuotientParams
    json_output: bool


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="misere",
        description="Misère-play outcomes and quotient monoids of partizan games",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_out = sub.add_parser("outcome", help="misère outcome of a sum expression")
    p_out.add_argument("expr", help="game expression, e.g. '*2+*3'")
    p_out.add_argument("--moves", action="store_true", help="list winning first moves")
    p_out.add_argument("--json", action="store_true")

    p_q = sub.add_parser("quotient", help="misère quotient of a closure")
    p_q.add_argument("generators", nargs="*", help="generator expressions")
    p_q.add_argument("--table1", type=int, metavar="N", help="catalog set for cardinality N")
    p_q.add_argument("--construct", type=int, metavar="N", help="planned family for cardinality N")
    _bound_flags(p_q)
    p_q.add_argument("--json", action="store_true")

    p_v = sub.add_parser("verify", help="run a verification suite")
    p_v.add_argument(
        "suite",
        choices=["nim-strategy", "atomic-weight", "flower-eval", "class-structure", "ender", "size-three"],
    )
    p_v.add_argument("--max-heap", type=int, default=7)
    p_v.add_argument("--max-parts", type=int, default=4)
    p_v.add_argument("--right-set", default="0,1", help="flower right values, e.g. '0,1,2,3'")
    p_v.add_argument("--nim-heap-bound", type=int, default=5)
    p_v.add_argument("--nim-parts", type=int, default=2)
    p_v.add_argument("--k-max", type=int, default=3)
    p_v.add_argument("--construct", type=int, metavar="N", help="family plan to check")
    p_v.add_argument("--n-max", type=int, default=3)
    p_v.add_argument("--birthday", type=int, default=2)
    _bound_flags(p_v)
    p_v.add_argument("--json", action="store_true")

    p_p = sub.add_parser("plan", help="construction plan for a target cardinality")
    p_p.add_argument("target", type=int)
    p_p.add_argument("--json", action="store_true")
    return parser


def _bound_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--element-bound", type=int, default=6)
    parser.add_argument("--witness-bound", type=int, default=6)
    parser.add_argument("--max-escalations", type=int, default=4)


def _params(args: argparse.Namespace) -> QuotientParams:
    return QuotientParams(
        element_bound=args.element_bound,
        witness_bound=args.witness_bound,
        max_escalations=args.max_escalations,
    ).validate()


def _cmd_outcome(store: GameStore, args: argparse.Namespace) -> int:
    position = store.parse_game(args.expr)
    engine = store.engine()
    outcome = engine.misere_outcome(position)
    if args.json:
        data = {"position": store.format_sum(position), "outcome": str(outcome)}
        if args.moves:
            data["left_winning_moves"] = [
                store.format_sum(s) for s in engine.winning_first_moves(position, True)
            ]
            data["right_winning_moves"] = [
                store.format_sum(s) for s in engine.winning_first_moves(position, False)
            ]
        print(json.dumps(data, indent=2))
    else:
        print(outcome)
        if args.moves:
            for side, left in (("Left", True), ("Right", False)):
                moves = engine.winning_first_moves(position, left)
                shown = ", ".join(store.format_sum(s) for s in moves) or "none"
                print(f"{side} winning moves: {shown}")
    return EXIT_OK


def _cmd_quotient(store: GameStore, args: argparse.Namespace) -> int:
    sources = [bool(args.generators), args.table1 is not None, args.construct is not None]
    if sum(sources) != 1:
        print("choose exactly one of: generator expressions, --table1, --construct", file=sys.stderr)
        return EXIT_PARSE_ERROR
    if args.table1 is not None:
        generators = table1_set(store, args.table1)
    elif args.construct is not None:
        generators = list(target_cardinality_plan(store, args.construct).generators)
    else:
        generators = [store.sum_as_game(store.parse_game(text)) for text in args.generators]
    atlas = closure_atoms(store, generators)
    q = compute_quotient(atlas, _params(args))
    if args.json:
        print(json.dumps(quotient_to_json(q), indent=2))
    else:
        print(f"generators: {', '.join(store.format_game(g) for g in generators) or '(none)'}")
        print(f"cardinality: {q.class_count}")
        print(f"verification: {q.verification}")
        print("classes:")
        for idx, (rep, out) in enumerate(zip(q.classes, q.outcome_of)):
            print(f"  [{idx}] {rep}  ({out})")
        print("cayley:")
        for row in q.cayley:
            print("  " + " ".join(f"{c:3d}" for c in row))
        if q.verification != "non-stabilized":
            pres = extract_presentation(q)
            rels = "; ".join(f"{a} = {b}" for a, b in pres.relation_strings) or "(free)"
            print(f"presentation: generators {list(pres.generator_names)}; relations {rels}")
    if q.verification == "non-stabilized":
        print(
            f"warning: not stabilized, cardinality is a lower bound "
            f"(history {list(q.escalation_history)})",
            file=sys.stderr,
        )
        return EXIT_NON_STABILIZED
    return EXIT_OK


def _cmd_verify(store: GameStore, args: argparse.Namespace) -> int:
    if args.suite == "nim-strategy":
        report = verify_nim_strategy(store, args.max_heap, args.max_parts)
    elif args.suite == "atomic-weight":
        values = [int(v) for v in args.right_set.split(",") if v != ""]
        report = verify_atomic_weight(store, values, args.nim_heap_bound, args.nim_parts, args.k_max)
    elif args.suite == "flower-eval":
        values = [int(v) for v in args.right_set.split(",") if v != ""]
        report = verify_flower_evaluation(store, values, args.nim_heap_bound, args.nim_parts)
    elif args.suite == "class-structure":
        if args.construct is None:
            print("class-structure needs --construct N", file=sys.stderr)
            return EXIT_PARSE_ERROR
        plan = target_cardinality_plan(store, args.construct)
        report = verify_class_structure(store, plan, _params(args))
    elif args.suite == "ender":
        if args.construct is None:
            print("ender needs --construct N", file=sys.stderr)
            return EXIT_PARSE_ERROR
        plan = target_cardinality_plan(store, args.construct)
        report = verify_ender_outcomes(store, plan, args.n_max)
    else:
        report = search_size_three(store, args.birthday, _params(args))
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.format_text())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_plan(store: GameStore, args: argparse.Namespace) -> int:
    plan = target_cardinality_plan(store, args.target)
    print(json.dumps(plan.to_json(store), indent=2))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    store = GameStore()
    try:
        if args.command == "outcome":
            return _cmd_outcome(store, args)
        if args.command == "quotient":
            return _cmd_quotient(store, args)
        if args.command == "verify":
            return _cmd_verify(store, args)
        return _cmd_plan(store, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except (ImpossibleTargetError, PlanUnavailableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IMPOSSIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
