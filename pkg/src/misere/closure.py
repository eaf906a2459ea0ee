"""Option-closed atom sets and elements of the closure they generate.

The closure of a generator list is the set of all disjunctive sums of the
generators' subpositions.  An Atlas fixes the atom universe; an Element is
a multiset of atoms written as a vector of multiplicities over the atlas
basis.  Materialized sum nodes among the atoms are rewritten into their
parts, so the basis contains only atoms that are not themselves sums.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .games import ZERO, GameId, GameStore, _as_multiset
from .nim import nim_misere_outcome
from .outcomes import Outcome, OutcomeEngine


class AtlasMismatchError(ValueError):
    """Raised when elements of different atlases are combined."""


class Atlas:
    """Atoms of a closure: the option closure of the generators, minus 0."""

    def __init__(self, store: GameStore, generators: Iterable[GameId], fast_path: bool = True):
        self.store = store
        self.generators: tuple[GameId, ...] = tuple(store._check(g) for g in generators)
        atoms: set[GameId] = set()
        for g in self.generators:
            atoms |= store.subpositions(g)
        atoms.discard(ZERO)
        order = lambda g: (store.birthday(g), g)
        self.atoms: tuple[GameId, ...] = tuple(sorted(atoms, key=order))
        self.basis: tuple[GameId, ...] = tuple(
            a for a in self.atoms if store.decomposition(a) is None
        )
        self._basis_index = {g: i for i, g in enumerate(self.basis)}
        self.nim_values: tuple[int | None, ...] = tuple(store.nim_value(g) for g in self.basis)
        self.fast_path = fast_path
        self.engine: OutcomeEngine = store.engine()
        self._outcomes: dict[tuple[int, ...], Outcome] = {}
        for atom in self.atoms:
            for opt in store.game(atom).left + store.game(atom).right:
                if opt != ZERO and opt not in atoms:
                    raise ValueError("atom set is not option-closed")

    def __repr__(self) -> str:
        names = ",".join(self.store.format_game(g) for g in self.generators)
        return f"Atlas(cl({names}); {len(self.atoms)} atoms)"

    @property
    def width(self) -> int:
        return len(self.basis)

    def zero(self) -> "Element":
        return Element(self, (0,) * self.width)

    def atom_element(self, index: int) -> "Element":
        counts = [0] * self.width
        counts[index] = 1
        return Element(self, tuple(counts))

    def element(self, games: Iterable[GameId] | Mapping[GameId, int]) -> "Element":
        """Build the element denoting a multiset of atoms (or sums thereof)."""
        counts = [0] * self.width
        for gid in self.store.flatten_sum(_as_multiset(games)):
            idx = self._basis_index.get(gid)
            if idx is None:
                raise ValueError(f"{self.store.format_game(gid)} is not an atom of this atlas")
            counts[idx] += 1
        return Element(self, tuple(counts))

    def parse_element(self, text: str) -> "Element":
        return self.element(self.store.parse_game(text))

    def element_games(self, x: "Element") -> Counter:
        bag = Counter()
        for gid, count in zip(self.basis, x.counts):
            if count:
                bag[gid] = count
        return bag

    def outcome(self, x: "Element") -> Outcome:
        """Misère outcome of the element, with a nim fast path.

        Elements whose components are all nimbers are scored by the
        closed-form nim rule when fast_path is on; everything else goes to
        the outcome engine.  The two routes are checked equivalent in the
        verification suite.
        """
        cached = self._outcomes.get(x.counts)
        if cached is not None:
            return cached
        if self.fast_path:
            heaps = []
            for value, count in zip(self.nim_values, x.counts):
                if count and value is None:
                    heaps = None
                    break
                if count:
                    heaps.extend((value,) * count)
            if heaps is not None:
                result = nim_misere_outcome(heaps)
                self._outcomes[x.counts] = result
                return result
        result = self.engine.misere_outcome(self.element_games(x))
        self._outcomes[x.counts] = result
        return result


@dataclass(frozen=True)
class Element:
    """One disjunctive sum in a closure, as atom multiplicities."""

    atlas: Atlas
    counts: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.counts)

    def is_zero(self) -> bool:
        return not any(self.counts)

    def __add__(self, other: "Element") -> "Element":
        return element_sum(self, other)

    def __str__(self) -> str:
        return self.atlas.store.format_sum(self.atlas.element_games(self))

    def __repr__(self) -> str:
        return f"Element({self})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and other.atlas is self.atlas
            and other.counts == self.counts
        )

    def __hash__(self) -> int:
        return hash((id(self.atlas), self.counts))


def closure_atoms(store: GameStore, generators: Iterable[GameId], fast_path: bool = True) -> Atlas:
    """Atlas of the closure generated by the given games."""
    return Atlas(store, generators, fast_path=fast_path)


def element_sum(x: Element, y: Element) -> Element:
    """Disjunctive sum of two elements of one atlas."""
    if x.atlas is not y.atlas:
        raise AtlasMismatchError("elements belong to different atlases")
    return Element(x.atlas, tuple(a + b for a, b in zip(x.counts, y.counts)))


def element_outcome(x: Element) -> Outcome:
    return x.atlas.outcome(x)


def iter_count_vectors(width: int, bound: int) -> Iterator[tuple[int, ...]]:
    """All multiplicity vectors with total ≤ bound, in graded-lex order.

    Grading is by total size; within a size, words over atom indices are
    ordered lexicographically (so earlier atoms fill first).
    """
    def exact(size: int, k: int) -> Iterator[tuple[int, ...]]:
        if k == 0:
            if size == 0:
                yield ()
            return
        if k == 1:
            yield (size,)
            return
        for first in range(size, -1, -1):
            for rest in exact(size - first, k - 1):
                yield (first,) + rest

    for size in range(bound + 1):
        yield from exact(size, width)


def enumerate_elements(atlas: Atlas, size_bound: int) -> list[Element]:
    """All elements of total multiplicity ≤ size_bound, in graded-lex order."""
    if size_bound < 0:
        raise ValueError("size bound must be nonnegative")
    return [Element(atlas, counts) for counts in iter_count_vectors(atlas.width, size_bound)]
