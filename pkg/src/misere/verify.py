"""Exhaustive desk-scale checks of the library's structural claims.

Every check runs concrete positions through the outcome oracle (and the
quotient engine where relevant) and reports counterexamples as data.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .closure import Atlas, closure_atoms, enumerate_elements
from .constructions import (
    ConstructionPlan,
    flower_right_values,
    recognize_family,
    tame_set,
)
from .games import GameId, GameStore
from .nim import grundy, nim_misere_outcome
from .outcomes import Outcome
from .quotient import (
    QuotientParams,
    bounded_class_count,
    class_of,
    compute_quotient,
)


@dataclass
class CheckReport:
    name: str
    params: dict
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, message: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(message)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "cases": self.cases,
            "failures": list(self.failures),
            "passed": self.passed,
        }

    def format_text(self) -> str:
        lines = [f"check {self.name}: {'PASS' if self.passed else 'FAIL'} ({self.cases} cases)"]
        for f in self.failures:
            lines.append(f"  failure: {f}")
        return "\n".join(lines)


def _nim_multisets(max_heap: int, max_parts: int, min_heap: int = 1) -> Iterable[tuple[int, ...]]:
    for size in range(max_parts + 1):
        yield from itertools.combinations_with_replacement(range(min_heap, max_heap + 1), size)


def verify_nim_strategy(store: GameStore, max_heap: int, max_parts: int) -> CheckReport:
    """Closed-form misère nim rule against the outcome oracle, exhaustively."""
    report = CheckReport("nim-strategy", {"max_heap": max_heap, "max_parts": max_parts})
    engine = store.engine()
    for heaps in _nim_multisets(max_heap, max_parts):
        expected = nim_misere_outcome(heaps)
        actual = engine.misere_outcome(store.nimber(h) for h in heaps)
        report.record(
            expected == actual,
            f"nim {heaps}: rule says {expected}, oracle says {actual}",
        )
    return report


def verify_atomic_weight(
    store: GameStore,
    right_values: Iterable[int],
    nim_heap_bound: int,
    nim_parts_bound: int,
    k_max: int,
) -> CheckReport:
    """One flower with nimbers is at worst first-player-win for Left; two or
    more flowers with nimbers are a Left win outright."""
    from .constructions import blue_mutant_flower

    values = sorted(set(right_values))
    report = CheckReport(
        "atomic-weight",
        {"right_values": values, "nim_heap_bound": nim_heap_bound,
         "nim_parts_bound": nim_parts_bound, "k_max": k_max},
    )
    flower = blue_mutant_flower(store, values)
    engine = store.engine()
    for heaps in _nim_multisets(nim_heap_bound, nim_parts_bound):
        nims = [store.nimber(h) for h in heaps]
        out = engine.misere_outcome([flower] + nims)
        report.record(
            out in (Outcome.N, Outcome.L),
            f"flower + {heaps}: outcome {out} not in {{N-, L-}}",
        )
        for k in range(2, k_max + 1):
            out = engine.misere_outcome([flower] * k + nims)
            report.record(
                out is Outcome.L,
                f"{k} flowers + {heaps}: outcome {out}, expected L-",
            )
    return report


def verify_flower_evaluation(
    store: GameStore,
    right_values: Iterable[int],
    nim_heap_bound: int,
    nim_parts_bound: int,
) -> CheckReport:
    """A flower plus nimbers is N- when the Grundy value lies in the right
    value set, and L- otherwise."""
    from .constructions import blue_mutant_flower

    values = sorted(set(right_values))
    report = CheckReport(
        "flower-eval",
        {"right_values": values, "nim_heap_bound": nim_heap_bound,
         "nim_parts_bound": nim_parts_bound},
    )
    flower = blue_mutant_flower(store, values)
    engine = store.engine()
    for heaps in _nim_multisets(nim_heap_bound, nim_parts_bound):
        expected = Outcome.N if grundy(heaps) in values else Outcome.L
        actual = engine.misere_outcome([flower] + [store.nimber(h) for h in heaps])
        report.record(
            expected == actual,
            f"flower + {heaps}: expected {expected}, oracle says {actual}",
        )
    return report


def _nim_only(atlas: Atlas, counts: tuple[int, ...]) -> bool:
    return all(not c or atlas.nim_values[i] is not None for i, c in enumerate(counts))


def verify_class_structure(
    store: GameStore, plan: ConstructionPlan, params: QuotientParams | None = None
) -> CheckReport:
    """Check the computed quotient of a flower family against its predicted
    class structure: nim elements partition as in the tame closure, single
    flowers partition by Grundy coset, kinds never mix, all multi-flower
    sums share one class, and (when augmented) pure ender sums share one."""
    prediction = recognize_family(store, plan.generators)
    report = CheckReport(
        "class-structure",
        {"target": plan.target, "case": plan.case, "generators":
         [store.format_game(g) for g in plan.generators]},
    )
    if prediction is None or prediction.kind == "tame":
        report.record(False, "plan is not a flower family")
        return report
    atlas = closure_atoms(store, plan.generators)
    q = compute_quotient(atlas, params)
    report.record(
        q.verification != "non-stabilized",
        f"quotient did not stabilize (history {q.escalation_history})",
    )
    report.record(
        q.class_count == plan.predicted_cardinality,
        f"cardinality {q.class_count}, predicted {plan.predicted_cardinality}",
    )

    n = prediction.n
    flower_idx = {atlas._basis_index[g]: g for g in prediction.flower_atoms}
    ender_idx = (
        atlas._basis_index.get(prediction.ender_atom)
        if prediction.ender_atom is not None
        else None
    )

    # (1) nim elements partition exactly as the tame closure partitions them
    tame_atlas = closure_atoms(store, tame_set(store, n))
    tame_q = compute_quotient(tame_atlas, params)
    window = min(4, q.element_bound)
    nim_elements = [
        e for e in enumerate_elements(atlas, window)
        if _nim_only(atlas, e.counts)
        and (ender_idx is None or not e.counts[ender_idx])
        and not any(e.counts[i] for i in flower_idx)
    ]
    for x, y in itertools.combinations(nim_elements, 2):
        tx = tame_atlas.element(atlas.element_games(x))
        ty = tame_atlas.element(atlas.element_games(y))
        same_big = class_of(q, x) == class_of(q, y)
        same_tame = class_of(tame_q, tx) == class_of(tame_q, ty)
        report.record(
            same_big == same_tame,
            f"nim pair {x} / {y}: family says {'same' if same_big else 'split'}, "
            f"tame closure says {'same' if same_tame else 'split'}",
        )

    # (2) single-flower elements partition by Grundy coset of the right set
    flower_values = {
        g: flower_right_values(store, g) for g in prediction.flower_atoms
    }
    small_nims = [e for e in nim_elements if e.size <= 3]
    for i, g in flower_idx.items():
        values = flower_values[g]
        base = atlas.atom_element(i)
        for x, y in itertools.combinations(small_nims, 2):
            gx = grundy(
                v for v, c in zip(atlas.nim_values, x.counts) for _ in range(c)
            )
            gy = grundy(
                v for v, c in zip(atlas.nim_values, y.counts) for _ in range(c)
            )
            same = class_of(q, base + x) == class_of(q, base + y)
            coset = (gx ^ gy) in values
            report.record(
                same == coset,
                f"{store.format_game(g)} + {x} vs + {y}: classes "
                f"{'equal' if same else 'differ'}, coset test says {coset}",
            )

    # (3) no cross-kind equivalences, (4) one absorbing multi-flower class,
    # and for augmented plans (5) one pure-ender class
    kinds: dict[str, set[int]] = {}
    class_kinds: dict[int, set[str]] = {}
    for e in enumerate_elements(atlas, min(3, q.element_bound)):
        flowers = sum(e.counts[i] for i in flower_idx)
        enders = e.counts[ender_idx] if ender_idx is not None else 0
        if enders and flowers == 0 and e.size == enders:
            kind = "ender"
        elif enders:
            kind = "multi"  # ender plus anything joins the absorbing class
        elif flowers == 0:
            kind = "nim"
        elif flowers == 1:
            which = next(i for i in flower_idx if e.counts[i])
            kind = f"flower {store.format_game(flower_idx[which])}"
        else:
            kind = "multi"
        cls = class_of(q, e)
        kinds.setdefault(kind, set()).add(cls)
        class_kinds.setdefault(cls, set()).add(kind)
    report.record(
        len(kinds.get("multi", set())) == 1,
        f"multi-flower sums occupy {len(kinds.get('multi', set()))} classes, expected 1",
    )
    if ender_idx is not None:
        report.record(
            len(kinds.get("ender", set())) == 1,
            f"pure ender sums occupy {len(kinds.get('ender', set()))} classes, expected 1",
        )
    for cls, ks in sorted(class_kinds.items()):
        report.record(len(ks) == 1, f"class {cls} mixes element kinds {sorted(ks)}")
    return report


def verify_ender_outcomes(
    store: GameStore,
    plan: ConstructionPlan,
    n_max: int,
    element_size_bound: int = 3,
) -> CheckReport:
    """Pure ender stacks are N-; an ender stack plus any nonzero element of
    the base closure is L-."""
    report = CheckReport(
        "ender", {"target": plan.target, "n_max": n_max, "size_bound": element_size_bound}
    )
    if plan.case != "ender-augmented":
        report.record(False, "plan is not ender-augmented")
        return report
    ender = plan.generators[-1]
    base = closure_atoms(store, plan.generators[:-1])
    engine = store.engine()
    for k in range(1, n_max + 1):
        out = engine.misere_outcome([ender] * k)
        report.record(out is Outcome.N, f"{k} enders: outcome {out}, expected N-")
    for e in enumerate_elements(base, element_size_bound):
        if e.is_zero():
            continue
        games = base.element_games(e)
        for k in range(1, n_max + 1):
            bag = dict(games)
            bag[ender] = k
            out = engine.misere_outcome(bag)
            report.record(
                out is Outcome.L,
                f"{k} enders + {e}: outcome {out}, expected L-",
            )
    return report


def _birthday_universe(store: GameStore, bound: int) -> list[GameId]:
    level = [store.make_game((), ())]
    for _ in range(bound):
        subsets = []
        for r in range(len(level) + 1):
            subsets.extend(itertools.combinations(level, r))
        level = sorted(
            {store.make_game(l, r) for l in subsets for r in subsets}
        )
    return level


def search_size_three(
    store: GameStore, birthday_bound: int, params: QuotientParams | None = None
) -> CheckReport:
    """Sweep all games of small birthday for a quotient of cardinality 3.

    Each singleton closure is probed at increasing bounds; as the bounded
    class count never decreases when bounds grow, any count above 3 rules
    the game out without full stabilization.  The reference quotients of
    the pairs from {1, *, ~1} are checked alongside.
    """
    report = CheckReport("size-three", {"birthday_bound": birthday_bound})
    params = params or QuotientParams()
    games = _birthday_universe(store, birthday_bound)
    hits = []
    for g in games:
        atlas = closure_atoms(store, [g])
        ruled_out = False
        for probe in (2, 4):
            if bounded_class_count(atlas, probe, probe) > 3:
                ruled_out = True
                break
        if ruled_out:
            report.record(True, "")
            continue
        q = compute_quotient(atlas, params)
        hit = q.verification != "non-stabilized" and q.class_count == 3
        if hit:
            hits.append(store.format_game(g))
        report.record(
            not hit, f"cl({store.format_game(g)}) stabilized at cardinality 3"
        )
    report.params["games_swept"] = len(games)
    report.params["three_hits"] = hits

    one, bar_one, star = store.one(), store.bar_one(), store.nimber(1)
    for label, pair in (("1,*", (one, star)), ("~1,*", (bar_one, star))):
        q = compute_quotient(closure_atoms(store, pair), params)
        value = q.class_count if q.verification != "non-stabilized" else None
        report.record(
            value == 7,
            f"quotient of cl({label}) expected 7, computed "
            f"{'no stable value' if value is None else value} "
            f"(verification {q.verification}, history {q.escalation_history})",
        )
        report.params[f"quotient({label})"] = value if value is not None else f">= {q.class_count}"
    q = compute_quotient(closure_atoms(store, (one, bar_one)), params)
    report.record(
        q.verification == "non-stabilized" and q.class_count > 10,
        f"cl(1,~1): expected more than 10 classes without stabilizing, got "
        f"{q.class_count} ({q.verification})",
    )
    report.params["quotient(1,~1)"] = f">= {q.class_count} (non-stabilized)"
    return report


def reports_to_json(reports: Sequence[CheckReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)
