"""Misère quotients of finitely generated closures.

Indistinguishability over an infinite closure is approximated with bounded
witnesses: two elements are separated when some witness element of size at
most the witness bound gives their sums different outcomes.  The bounded
partition is computed by rounds of refinement (one per unit of witness
size), which groups elements exactly as comparing full outcome signatures
over all witnesses up to the bound would, without materializing the
signatures.  Bounds are escalated on a fixed schedule until the class
structure and Cayley table stop changing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .closure import Atlas, Element, element_outcome, iter_count_vectors
from .outcomes import Outcome

Counts = tuple[int, ...]

UNRESOLVED = -1


class UnresolvedClassError(ValueError):
    """An element could not be assigned to a class of the quotient."""


@dataclass
class QuotientParams:
    element_bound: int = 6
    witness_bound: int = 6
    escalation_step: int = 2
    stability_rounds: int = 2
    max_escalations: int = 4

    def validate(self) -> "QuotientParams":
        if min(self.element_bound, self.witness_bound, self.escalation_step) < 1:
            raise ValueError("bounds must be positive")
        if self.stability_rounds < 1 or self.max_escalations < 0:
            raise ValueError("bad escalation parameters")
        return self


def _refined_partition(atlas: Atlas, element_bound: int, witness_bound: int) -> dict[Counts, int]:
    """Partition elements of size ≤ element_bound by bounded witnesses.

    Classes carry dense ids in graded-lex order of their least member, so
    the empty element's class is always id 0.
    """
    width = atlas.width
    universe_bound = element_bound + witness_bound
    keys: list[Counts] = list(iter_count_vectors(width, universe_bound))
    # graded order: record where each size starts
    offsets = [0] * (universe_bound + 2)
    for key in keys:
        offsets[sum(key) + 1] += 1
    for s in range(1, universe_bound + 2):
        offsets[s] += offsets[s - 1]

    outcome_of = atlas.outcome
    cls: dict[Counts, int] = {}
    canon: dict = {}
    for key in keys:
        out = outcome_of(Element(atlas, key))
        cid = canon.setdefault(out, len(canon))
        cls[key] = cid

    for r in range(1, witness_bound + 1):
        limit = universe_bound - r
        live = keys[: offsets[limit + 1]]
        new: dict[Counts, int] = {}
        canon = {}
        for key in live:
            sig = [cls[key]]
            for i in range(width):
                succ = key[:i] + (key[i] + 1,) + key[i + 1 :]
                sig.append(cls[succ])
            t = tuple(sig)
            cid = canon.get(t)
            if cid is None:
                cid = len(canon)
                canon[t] = cid
            new[key] = cid
        cls = new
    return cls


def bounded_class_count(atlas: Atlas, element_bound: int, witness_bound: int) -> int:
    """Number of classes of the bounded partition (a quotient lower bound)."""
    part = _refined_partition(atlas, element_bound, witness_bound)
    return len(set(part.values()))


def indistinguishable(x: Element, y: Element, witness_bound: int) -> bool:
    """Direct bounded test of x ≡ y: no witness of size ≤ bound separates them.

    The witness 0 is always included.  This is the pairwise counterpart of
    the partition refinement and is used to cross-check it.
    """
    if x.atlas is not y.atlas:
        raise ValueError("elements belong to different atlases")
    atlas = x.atlas
    for counts in iter_count_vectors(atlas.width, witness_bound):
        w = Element(atlas, counts)
        if element_outcome(x + w) != element_outcome(y + w):
            return False
    return True


@dataclass
class _Round:
    reps: tuple[Counts, ...]
    outcomes: tuple[Outcome, ...]
    cayley: tuple[tuple[int, ...], ...]
    class_map: dict[Counts, int]
    unresolved: bool

    def summary(self):
        return (self.reps, self.outcomes, self.cayley, self.unresolved)


def _quotient_round(atlas: Atlas, element_bound: int, witness_bound: int) -> _Round:
    part = _refined_partition(atlas, element_bound, witness_bound)
    reps: list[Counts] = []
    for key, cid in part.items():  # insertion order is graded-lex
        if cid == len(reps):
            reps.append(key)
    outcomes = tuple(atlas.outcome(Element(atlas, rep)) for rep in reps)

    count = len(reps)
    max_pair = max((sum(a) + sum(b) for a in reps for b in reps), default=0)
    if max_pair <= element_bound:
        lookup = part
    else:
        ext = _refined_partition(atlas, max_pair, witness_bound)
        remap = {ext[rep]: idx for idx, rep in enumerate(reps)}
        lookup = {key: remap.get(cid, UNRESOLVED) for key, cid in ext.items()}

    unresolved = False
    cayley = [[0] * count for _ in range(count)]
    for i, a in enumerate(reps):
        for j in range(i, count):
            b = reps[j]
            z = tuple(x + y for x, y in zip(a, b))
            cid = lookup.get(z, UNRESOLVED)
            if cid == UNRESOLVED:
                unresolved = True
            cayley[i][j] = cayley[j][i] = cid
    return _Round(tuple(reps), outcomes, tuple(tuple(row) for row in cayley), part, unresolved)


@dataclass
class QuotientMonoid:
    """Equivalence classes of a closure with their monoid structure."""

    atlas: Atlas
    class_count: int
    classes: list[Element]
    identity_class: int
    cayley: tuple[tuple[int, ...], ...]
    outcome_of: tuple[Outcome, ...]
    verification: str  # "bounded" | "certified" | "non-stabilized"
    element_bound: int
    witness_bound: int
    generator_classes: tuple[int, ...]
    escalation_history: tuple[int, ...]
    element_classes: dict[Counts, int] = field(repr=False, default_factory=dict)

    def __repr__(self) -> str:
        return (
            f"QuotientMonoid({self.atlas!r}, cardinality={self.class_count}, "
            f"verification={self.verification})"
        )


def _structure_matches(atlas: Atlas, reps: tuple[Counts, ...], prediction) -> bool:
    flower_idx = {atlas._basis_index[g]: k for k, g in enumerate(prediction.flower_atoms)}
    ender_idx = atlas._basis_index.get(prediction.ender_atom) if prediction.ender_atom is not None else None
    nim_classes = 0
    flower_classes = [0] * len(prediction.flower_atoms)
    multi = 0
    ender_classes = 0
    other = 0
    for rep in reps:
        flowers = sum(rep[i] for i in flower_idx)
        enders = rep[ender_idx] if ender_idx is not None else 0
        rest = sum(rep) - flowers - enders
        rest_nim = all(
            not c or atlas.nim_values[i] is not None
            for i, c in enumerate(rep)
            if i not in flower_idx and i != ender_idx
        )
        if enders:
            if flowers == 0 and rest == 0:
                ender_classes += 1
            else:
                other += 1
        elif flowers == 0:
            nim_classes += 1 if rest_nim else 0
            other += 0 if rest_nim else 1
        elif flowers == 1:
            if rest_nim:
                which = next(k for i, k in flower_idx.items() if rep[i])
                flower_classes[which] += 1
            else:
                other += 1
        else:
            multi += 1
    return (
        other == 0
        and nim_classes == prediction.nim_class_count
        and tuple(flower_classes) == prediction.flower_class_counts
        and multi == prediction.multiflower_classes
        and ender_classes == prediction.ender_classes
    )


def compute_quotient(atlas: Atlas, params: QuotientParams | None = None) -> QuotientMonoid:
    """Quotient of the closure, with bound escalation until stable.

    The result is marked "bounded" once the representatives, outcomes and
    Cayley table are unchanged for the required number of consecutive
    escalations, and upgraded to "certified" when a registered generator
    family predicts the same cardinality and class structure.  If the cap
    on escalations is hit first, the result is a lower bound and is marked
    "non-stabilized".
    """
    params = (params or QuotientParams()).validate()
    e, w = params.element_bound, params.witness_bound
    streak = 0
    escalations = 0
    history: list[int] = []
    prev_summary = None
    while True:
        rnd = _quotient_round(atlas, e, w)
        history.append(len(rnd.reps))
        stabilized = False
        if rnd.summary() == prev_summary and not rnd.unresolved:
            streak += 1
            if streak >= params.stability_rounds:
                stabilized = True
        else:
            streak = 0
        if stabilized or escalations >= params.max_escalations:
            break
        prev_summary = rnd.summary()
        e += params.escalation_step
        w += params.escalation_step
        escalations += 1

    verification = "bounded" if stabilized else "non-stabilized"
    if stabilized:
        from . import constructions

        prediction = constructions.recognize_family(atlas.store, atlas.generators)
        if (
            prediction is not None
            and prediction.cardinality == len(rnd.reps)
            and _structure_matches(atlas, rnd.reps, prediction)
        ):
            verification = "certified"

    unit_class = tuple(
        rnd.class_map[(0,) * i + (1,) + (0,) * (atlas.width - i - 1)] for i in range(atlas.width)
    )
    return QuotientMonoid(
        atlas=atlas,
        class_count=len(rnd.reps),
        classes=[Element(atlas, rep) for rep in rnd.reps],
        identity_class=0,
        cayley=rnd.cayley,
        outcome_of=rnd.outcomes,
        verification=verification,
        element_bound=e,
        witness_bound=w,
        generator_classes=unit_class,
        escalation_history=tuple(history),
        element_classes=rnd.class_map,
    )


def class_of(q: QuotientMonoid, x: Element) -> int:
    """Class index of an element, via the monoid structure beyond the window."""
    if x.atlas is not q.atlas:
        raise ValueError("element belongs to a different atlas")
    cid = q.element_classes.get(x.counts)
    if cid is not None:
        return cid
    if q.verification == "non-stabilized":
        raise UnresolvedClassError(f"{x} lies beyond the bounds of a non-stabilized quotient")
    c = q.identity_class
    for i, count in enumerate(x.counts):
        g = q.generator_classes[i]
        for _ in range(count):
            c = q.cayley[c][g]
    return c


@dataclass
class CongruenceReport:
    bound: int
    cases: int
    violations: list[str]

    @property
    def passed(self) -> bool:
        return not self.violations


def check_congruence(q: QuotientMonoid, atlas: Atlas, bound: int) -> CongruenceReport:
    """Verify class(x+y) is determined by (class(x), class(y)) up to a bound.

    Also checks that every enumerated member of a class has the class
    outcome.  Violations are reported as data, not raised.
    """
    if atlas is not q.atlas:
        raise ValueError("quotient was computed over a different atlas")
    if bound > q.element_bound:
        raise ValueError(f"bound {bound} exceeds the enumerated window {q.element_bound}")
    elems = [key for key in q.element_classes if sum(key) <= bound]
    violations: list[str] = []
    cases = 0
    for key in elems:
        cases += 1
        cid = q.element_classes[key]
        out = atlas.outcome(Element(atlas, key))
        if out != q.outcome_of[cid]:
            violations.append(
                f"outcome of {Element(atlas, key)} is {out} but its class has {q.outcome_of[cid]}"
            )
    by_size: dict[int, list[Counts]] = {}
    for key in elems:
        by_size.setdefault(sum(key), []).append(key)
    for sx, xs in by_size.items():
        for sy, ys in by_size.items():
            if sx + sy > bound or sy < sx:
                continue
            for x in xs:
                for y in ys:
                    z = tuple(a + b for a, b in zip(x, y))
                    cases += 1
                    expected = q.cayley[q.element_classes[x]][q.element_classes[y]]
                    actual = q.element_classes[z]
                    if expected != actual:
                        violations.append(
                            f"class({Element(atlas, x)} + {Element(atlas, y)}) is {actual}, "
                            f"Cayley table gives {expected}"
                        )
    return CongruenceReport(bound=bound, cases=cases, violations=violations)


@dataclass
class Presentation:
    """Generators and relations extracted from a Cayley table."""

    generator_names: tuple[str, ...]
    generator_classes: tuple[int, ...]
    relations: tuple[tuple[Counts, Counts], ...]
    relation_strings: tuple[tuple[str, str], ...]

    def to_json(self) -> dict:
        return {
            "generators": list(self.generator_names),
            "relations": [list(pair) for pair in self.relation_strings],
        }


def extract_presentation(q: QuotientMonoid) -> Presentation:
    """Present the quotient monoid on the classes of its atoms.

    Words over the generators are enumerated in graded-lex order; a word
    that reaches an already-named class becomes a relation and blocks all
    its multiples, so the relation list is reduced in enumeration order.
    """
    if q.verification == "non-stabilized":
        raise UnresolvedClassError("cannot present a non-stabilized quotient")
    atlas = q.atlas
    width = atlas.width
    zero = (0,) * width
    canonical: dict[int, Counts] = {q.identity_class: zero}
    word_class: dict[Counts, int] = {zero: q.identity_class}
    relations: list[tuple[Counts, Counts]] = []
    lhs_list: list[Counts] = []

    size = 1
    while True:
        found = False
        for counts in iter_count_vectors(width, size):
            if sum(counts) != size:
                continue
            if any(all(c >= l for c, l in zip(counts, lhs)) for lhs in lhs_list):
                continue
            found = True
            j = next(i for i, c in enumerate(counts) if c)
            parent = counts[:j] + (counts[j] - 1,) + counts[j + 1 :]
            cls = q.cayley[word_class[parent]][q.generator_classes[j]]
            if cls in canonical:
                relations.append((counts, canonical[cls]))
                lhs_list.append(counts)
            else:
                canonical[cls] = counts
                word_class[counts] = cls
        if not found:
            break
        size += 1

    fmt = lambda counts: str(Element(atlas, counts))
    return Presentation(
        generator_names=tuple(atlas.store.format_game(g) for g in atlas.basis),
        generator_classes=q.generator_classes,
        relations=tuple(relations),
        relation_strings=tuple((fmt(a), fmt(b)) for a, b in relations),
    )


def quotient_to_json(q: QuotientMonoid) -> dict:
    """JSON form of a quotient result (schema shared with the CLI)."""
    data = {
        "cardinality": q.class_count,
        "verification": q.verification,
        "classes": [
            {"representative": str(rep), "outcome": str(out)}
            for rep, out in zip(q.classes, q.outcome_of)
        ],
        "cayley": [list(row) for row in q.cayley],
        "presentation": None,
    }
    if q.verification != "non-stabilized":
        data["presentation"] = extract_presentation(q).to_json()
    return data
