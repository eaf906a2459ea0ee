"""Misère outcome computation for disjunctive sums of stored games.

This is the ground-truth oracle for the rest of the library: a direct
memoized recursion over sum positions.  A player with no move wins (misère
convention); a move in a sum replaces one component by one of its options.
"""

from __future__ import annotations

import enum
from bisect import insort
from typing import Iterable, Mapping

from .games import ZERO, GameId, GameStore, _as_multiset


class Outcome(enum.Enum):
    """Misère outcome class of a position."""

    L = "L-"  # Left wins moving first or second
    R = "R-"
    P = "P-"  # previous (second) player wins
    N = "N-"  # next (first) player wins

    def __str__(self) -> str:
        return self.value

    @staticmethod
    def from_token(token: str) -> "Outcome":
        return Outcome(token)

    def conjugate(self) -> "Outcome":
        if self is Outcome.L:
            return Outcome.R
        if self is Outcome.R:
            return Outcome.L
        return self


def outcome_from_wins(left_first: bool, right_first: bool) -> Outcome:
    if left_first:
        return Outcome.N if right_first else Outcome.L
    return Outcome.R if right_first else Outcome.P


Position = Iterable[GameId] | Mapping[GameId, int]


class OutcomeEngine:
    """Memoized misère outcome solver over multisets of GameIds.

    Positions are canonicalized by dropping zero components, expanding
    materialized sum nodes into their parts (game-preserving), and sorting.
    Outcomes are pure functions of the position, so concurrent readers and
    racing memo writers always agree.
    """

    def __init__(self, store: GameStore, memo: bool = True):
        self.store = store
        self.memo = memo
        self._lf: dict[tuple[GameId, ...], bool] = {}
        self._rf: dict[tuple[GameId, ...], bool] = {}

    # -- canonical keys -----------------------------------------------------

    def canonical_key(self, position: Position) -> tuple[GameId, ...]:
        return self.store.flatten_sum(_as_multiset(position))

    def _successors(self, key: tuple[GameId, ...], left: bool) -> list[tuple[GameId, ...]]:
        store = self.store
        seen = set()
        out = []
        for i, gid in enumerate(key):
            if i and key[i - 1] == gid:
                continue
            rest = list(key[:i] + key[i + 1 :])
            game = store.game(gid)
            for opt in game.left if left else game.right:
                succ = rest
                if opt != ZERO:
                    parts = store.decomposition(opt)
                    succ = list(rest)
                    if parts is None:
                        insort(succ, opt)
                    else:
                        for p in parts:
                            insort(succ, p)
                t = tuple(succ)
                if t not in seen:
                    seen.add(t)
                    out.append(t)
        return out

    # -- winner predicates ----------------------------------------------------

    def _wins(self, key: tuple[GameId, ...], left: bool) -> bool:
        table = self._lf if left else self._rf
        if self.memo:
            cached = table.get(key)
            if cached is not None:
                return cached
        succs = self._successors(key, left)
        if not succs:
            result = True  # no move available: mover wins under misère
        else:
            result = any(not self._wins(s, not left) for s in succs)
        if self.memo:
            table[key] = result
        return result

    def left_first_wins(self, position: Position) -> bool:
        """True iff Left, moving first, wins the sum under misère play."""
        return self._wins(self.canonical_key(position), True)

    def right_first_wins(self, position: Position) -> bool:
        return self._wins(self.canonical_key(position), False)

    def misere_outcome(self, position: Position) -> Outcome:
        key = self.canonical_key(position)
        return outcome_from_wins(self._wins(key, True), self._wins(key, False))

    def misere_outcome_game(self, gid: GameId) -> Outcome:
        return self.misere_outcome((gid,))

    def winning_first_moves(self, position: Position, left: bool) -> list[tuple[GameId, ...]]:
        """Successor positions the mover can reach and then win."""
        key = self.canonical_key(position)
        return [s for s in self._successors(key, left) if not self._wins(s, not left)]
