"""Generator families with predictable quotient structure.

Covers XOR subspaces of the nim vector space, blue mutant flowers built
from them, the tame nimber closures, flower families and their ender
augmentation, the catalog of small-cardinality generator sets, and a
planner mapping a target cardinality to a generator family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .games import ZERO, GameId, GameStore
from .nim import mex


class ImpossibleTargetError(ValueError):
    """Target cardinality 3, which no closure achieves."""


class PlanUnavailableError(ValueError):
    """No generator family in the implemented chain reaches this target."""


@dataclass(frozen=True)
class Subspace:
    """XOR-closed subset of the integers below 2**n, with 0."""

    n: int
    dim: int
    basis: tuple[int, ...]
    elements: frozenset[int]

    def __post_init__(self):
        if 0 not in self.elements or len(self.elements) != 1 << self.dim:
            raise ValueError("not a subspace")
        for a in self.elements:
            for b in self.elements:
                if a ^ b not in self.elements:
                    raise ValueError("not closed under xor")
            if a >= 1 << self.n:
                raise ValueError("element outside the ambient space")

    def sorted_elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))


def _reduced_basis(elements: Iterable[int]) -> tuple[int, ...]:
    basis: list[int] = []
    for v in sorted(elements):
        w = v
        for b in basis:
            w = min(w, w ^ b)
        if w:
            basis.append(w)
    return tuple(sorted(basis))


def _span(vectors: frozenset[int], v: int) -> frozenset[int]:
    return vectors | frozenset(x ^ v for x in vectors)


def subspaces_containing_one(n: int, d: int) -> list[Subspace]:
    """All dimension-d subspaces of the space below 2**n that contain 1."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    size = 1 << n
    found: set[frozenset[int]] = set()

    def grow(current: frozenset[int], dim: int, start: int):
        if dim == d:
            found.add(current)
            return
        # adding extension vectors in increasing order still reaches every
        # subspace, and prunes permuted duplicates of the same basis chain
        for v in range(start, size):
            if v not in current:
                grow(_span(current, v), dim + 1, v + 1)

    grow(frozenset({0, 1}), 1, 2)
    spaces = sorted(found, key=lambda s: tuple(sorted(s)))
    return [Subspace(n=n, dim=d, basis=_reduced_basis(s), elements=s) for s in spaces]


def blue_mutant_flower(store: GameStore, right_values: Iterable[int]) -> GameId:
    """The game {0,*,...,*mex(X) | *x : x in X} for a value set X with mex > 1."""
    values = sorted(set(right_values))
    if any(v < 0 for v in values):
        raise ValueError("nimber indices must be nonnegative")
    m = mex(values)
    if m <= 1:
        raise ValueError(f"flower needs mex(X) > 1, got mex={m}")
    left = [store.nimber(i) for i in range(m + 1)]
    right = [store.nimber(v) for v in values]
    return store.make_game(left, right)


def flower_right_values(store: GameStore, gid: GameId) -> Optional[frozenset[int]]:
    """The right value set X when the game is a blue mutant flower, else None."""
    g = store.game(gid)
    rvals = [store.nim_value(o) for o in g.right]
    lvals = [store.nim_value(o) for o in g.left]
    if None in rvals or None in lvals or not rvals:
        return None
    values = frozenset(rvals)
    m = mex(values)
    if m <= 1 or set(lvals) != set(range(m + 1)):
        return None
    return values


def tame_set(store: GameStore, n: int) -> list[GameId]:
    """Generator of the n-th tame closure: the single nimber *2^(n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return [store.nimber(1 << (n - 1))]


def flower_family(store: GameStore, n: int, subspaces: Sequence[Subspace]) -> list[GameId]:
    """*2^(n-1) together with one blue mutant flower per subspace.

    The subspaces must be distinct, contain 1, and live below 2**n.
    """
    seen = set()
    for h in subspaces:
        if 1 not in h.elements:
            raise ValueError("every subspace must contain 1")
        if max(h.elements) >= 1 << n:
            raise ValueError("subspace exceeds the ambient space")
        if h.elements in seen:
            raise ValueError("duplicate subspaces")
        seen.add(h.elements)
    gens = tame_set(store, n)
    gens.extend(blue_mutant_flower(store, h.elements) for h in subspaces)
    return gens


def flower_family_cardinality(n: int, dims: Iterable[int]) -> int:
    dims = tuple(dims)
    return (1 << n) + sum(1 << (n - d) for d in dims) + 3


def augment_with_ender(store: GameStore, generators: Sequence[GameId]) -> list[GameId]:
    """Append the ender {B+B | } built from the first flower B in the list."""
    flower = next((g for g in generators if flower_right_values(store, g) is not None), None)
    if flower is None:
        raise ValueError("no blue mutant flower among the generators")
    double = store.sum_as_game((flower, flower))
    ender = store.make_game((double,), ())
    return list(generators) + [ender]


def _is_ender_of(store: GameStore, gid: GameId, flowers: Sequence[GameId]) -> Optional[GameId]:
    g = store.game(gid)
    if g.right or len(g.left) != 1:
        return None
    parts = store.decomposition(g.left[0])
    for flower in flowers:
        if parts == (flower, flower):
            return flower
    return None


TABLE_TARGETS = (1, 2, 4, 5, 6, 7, 11)


def table1_set(store: GameStore, n: int) -> list[GameId]:
    """Catalog generator sets for the small cardinalities 1,2,4,5,6,7,11."""
    star = store.nimber(1)
    if n == 1:
        return []
    if n == 2:
        return [star]
    if n == 4:
        return [store.make_game((ZERO, star), (ZERO,))]
    if n == 5:
        inner = store.make_game((ZERO, star), (ZERO,))
        return [store.make_game((store.sum_as_game((inner, inner)),), ())]
    if n == 6:
        return [store.nimber(2)]
    if n == 7:
        return [store.one(), star]
    if n == 11:
        return [
            store.make_game((star,), (ZERO,)),
            store.make_game((ZERO,), (ZERO, star)),
        ]
    if n == 3:
        raise ImpossibleTargetError("no closure has quotient cardinality 3")
    raise ValueError(f"no catalog set for cardinality {n}")


@dataclass(frozen=True)
class ConstructionPlan:
    """A generator family chosen to hit a target quotient cardinality."""

    target: int
    case: str  # "table-lookup" | "general" | "ender-augmented" | "power-of-two"
    n: Optional[int]
    dims: tuple[int, ...]
    subspaces: tuple[Subspace, ...]
    generators: tuple[GameId, ...]
    predicted_cardinality: int

    def to_json(self, store: GameStore) -> dict:
        return {
            "target": self.target,
            "case": self.case,
            "n": self.n,
            "dims": list(self.dims),
            "generators": [store.format_game(g) for g in self.generators],
            "predicted_cardinality": self.predicted_cardinality,
        }


def _general_plan(store: GameStore, target: int, bits: Sequence[int]) -> ConstructionPlan:
    n = bits[0]
    dims = tuple(n - a for a in bits[1:])
    subspaces = tuple(subspaces_containing_one(n, d)[0] for d in dims)
    gens = flower_family(store, n, subspaces)
    predicted = flower_family_cardinality(n, dims)
    assert predicted == target
    return ConstructionPlan(target, "general", n, dims, subspaces, tuple(gens), predicted)


def _power_of_two_plan(store: GameStore, target: int, a0: int) -> ConstructionPlan:
    # target = 2^a0 + 3 with a0 >= 4: one dim-1 and two dim-2 subspaces below 2^(a0-1)
    n = a0 - 1
    dims = (1, 2, 2)
    dim2 = subspaces_containing_one(n, 2)
    subspaces = (subspaces_containing_one(n, 1)[0], dim2[0], dim2[1])
    gens = flower_family(store, n, subspaces)
    predicted = flower_family_cardinality(n, dims)
    assert predicted == target
    return ConstructionPlan(target, "power-of-two", n, dims, subspaces, tuple(gens), predicted)


def target_cardinality_plan(store: GameStore, target: int) -> ConstructionPlan:
    """Plan a generator family whose quotient cardinality formula hits target.

    Cardinality 3 is impossible.  Targets 8 and 12 dead-end in the
    implemented chain: their base target (one less) is itself one of the
    small exceptions with no flower to augment.
    """
    if target < 1:
        raise ValueError("target must be positive")
    if target == 3:
        raise ImpossibleTargetError("no closure has quotient cardinality 3")
    if target in TABLE_TARGETS:
        gens = tuple(table1_set(store, target))
        return ConstructionPlan(target, "table-lookup", None, (), (), gens, target)
    bits = [i for i in range(target.bit_length(), -1, -1) if (target - 3) >> i & 1]
    if len(bits) == 1:
        return _power_of_two_plan(store, target, bits[0])  # a0 >= 4: smaller are in the table
    if bits[-1] > 0:
        return _general_plan(store, target, bits)
    base_bits = bits[:-1]
    if len(base_bits) == 1:
        if base_bits[0] <= 3:
            raise PlanUnavailableError(
                f"target {target}: base target {target - 1} is a small exception with no flower"
            )
        base = _power_of_two_plan(store, target - 1, base_bits[0])
    else:
        base = _general_plan(store, target - 1, base_bits)
    gens = tuple(augment_with_ender(store, base.generators))
    return ConstructionPlan(
        target, "ender-augmented", base.n, base.dims, base.subspaces, gens, base.predicted_cardinality + 1
    )


@dataclass(frozen=True)
class FamilyPrediction:
    """Closed-form class structure predicted for a recognized family."""

    kind: str  # "tame" | "flower-family" | "ender-augmented"
    n: int
    cardinality: int
    nim_class_count: int
    flower_atoms: tuple[GameId, ...]
    flower_class_counts: tuple[int, ...]
    multiflower_classes: int
    ender_atom: Optional[GameId]
    ender_classes: int


def recognize_family(store: GameStore, generators: Sequence[GameId]) -> Optional[FamilyPrediction]:
    """Match a generator list against the registered closed-form families."""
    gens = list(generators)
    if not gens:
        return None
    v = store.nim_value(gens[0])
    if v is None or v < 1 or v & (v - 1):
        return None
    n = v.bit_length()  # v == 2^(n-1)
    rest = gens[1:]
    flowers: list[tuple[GameId, frozenset[int]]] = []
    ender: Optional[GameId] = None
    for idx, g in enumerate(rest):
        values = flower_right_values(store, g)
        if values is None:
            if idx == len(rest) - 1 and flowers:
                flower = _is_ender_of(store, g, [f for f, _ in flowers])
                if flower is not None and flower == flowers[0][0]:
                    ender = g
                    continue
            return None
        if 1 not in values or max(values) >= 1 << n:
            return None
        if values in (x for _, x in flowers):
            return None
        size = len(values)
        if size & (size - 1) or 0 not in values:
            return None
        if any(a ^ b not in values for a in values for b in values):
            return None
        flowers.append((g, values))
    dims = tuple((len(x).bit_length() - 1) for _, x in flowers)
    nim_classes = (1 << n) + 2
    flower_counts = tuple(1 << (n - d) for d in dims)
    multi = 1 if flowers else 0
    cardinality = nim_classes + sum(flower_counts) + multi + (1 if ender else 0)
    kind = "tame" if not flowers else ("ender-augmented" if ender else "flower-family")
    return FamilyPrediction(
        kind=kind,
        n=n,
        cardinality=cardinality,
        nim_class_count=nim_classes,
        flower_atoms=tuple(f for f, _ in flowers),
        flower_class_counts=flower_counts,
        multiflower_classes=multi,
        ender_atom=ender,
        ender_classes=1 if ender else 0,
    )
