"""Hash-consed finite partizan games.

Every game lives exactly once in an append-only GameStore and is addressed
by an integer GameId.  Two games with equal Left and Right option sets
(recursively) always receive the same id, so game equality is id equality.
The options graph is acyclic by construction: options must already exist
when a game is interned.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

GameId = int

ZERO: GameId = 0


class UnknownGameError(KeyError):
    """Raised when a GameId was never allocated by this store."""


class ParseError(ValueError):
    """Syntax error in a game expression, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class Game:
    """Option sets of a single game, as sorted tuples of interned ids."""

    left: tuple[GameId, ...]
    right: tuple[GameId, ...]


def _as_multiset(position: Iterable[GameId] | Mapping[GameId, int]) -> Counter:
    if isinstance(position, Mapping):
        bag = Counter()
        for gid, mult in position.items():
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                bag[gid] += mult
        return bag
    return Counter(position)


class GameStore:
    """Append-only table of interned games.

    Interning is serialized with a lock; reads of already-stored games are
    safe from any thread because the table never mutates existing entries.
    """

    def __init__(self):
        self._games: list[Game] = []
        self._index: dict[tuple[tuple[GameId, ...], tuple[GameId, ...]], GameId] = {}
        self._lock = threading.RLock()
        self._birthday: dict[GameId, int] = {}
        self._conjugate: dict[GameId, GameId] = {}
        self._subpositions: dict[GameId, frozenset[GameId]] = {}
        self._nim_value: dict[GameId, int | None] = {}
        self._nimbers: list[GameId] = []
        # materialized disjunctive sums: flattened parts -> node, node -> parts
        self._sum_nodes: dict[tuple[GameId, ...], GameId] = {}
        self._decomposition: dict[GameId, tuple[GameId, ...]] = {}
        self._format: dict[GameId, str] = {}
        self._engine = None
        self.make_game((), ())  # id 0 is always the empty game

    # -- construction ------------------------------------------------------

    def __len__(self) -> int:
        return len(self._games)

    def _check(self, gid: GameId) -> GameId:
        if not isinstance(gid, int) or not 0 <= gid < len(self._games):
            raise UnknownGameError(gid)
        return gid

    def make_game(self, left: Iterable[GameId], right: Iterable[GameId]) -> GameId:
        """Intern the game with the given option sets, deduplicated."""
        lkey = tuple(sorted({self._check(g) for g in left}))
        rkey = tuple(sorted({self._check(g) for g in right}))
        key = (lkey, rkey)
        with self._lock:
            gid = self._index.get(key)
            if gid is None:
                gid = len(self._games)
                self._games.append(Game(lkey, rkey))
                self._index[key] = gid
            return gid

    def game(self, gid: GameId) -> Game:
        return self._games[self._check(gid)]

    def left_options(self, gid: GameId) -> tuple[GameId, ...]:
        return self.game(gid).left

    def right_options(self, gid: GameId) -> tuple[GameId, ...]:
        return self.game(gid).right

    def nimber(self, k: int) -> GameId:
        """*k = {0,*,...,*(k-1) | 0,*,...,*(k-1)}; nimber(0) is 0."""
        if k < 0:
            raise ValueError("nimber index must be nonnegative")
        while len(self._nimbers) <= k:
            opts = tuple(self._nimbers)
            self._nimbers.append(self.make_game(opts, opts))
        return self._nimbers[k]

    def one(self) -> GameId:
        return self.make_game((ZERO,), ())

    def bar_one(self) -> GameId:
        return self.make_game((), (ZERO,))

    def conjugate(self, gid: GameId) -> GameId:
        """Swap Left and Right option sets, recursively."""
        self._check(gid)
        cached = self._conjugate.get(gid)
        if cached is not None:
            return cached
        g = self.game(gid)
        result = self.make_game(
            tuple(self.conjugate(r) for r in g.right),
            tuple(self.conjugate(l) for l in g.left),
        )
        self._conjugate[gid] = result
        self._conjugate[result] = gid
        parts = self._decomposition.get(gid)
        if parts is not None and result not in self._decomposition and result != gid:
            conj_parts = tuple(sorted(self.conjugate(p) for p in parts))
            self._decomposition.setdefault(result, conj_parts)
            self._sum_nodes.setdefault(conj_parts, result)
        return result

    def birthday(self, gid: GameId) -> int:
        self._check(gid)
        cached = self._birthday.get(gid)
        if cached is not None:
            return cached
        g = self.game(gid)
        opts = g.left + g.right
        value = 1 + max((self.birthday(o) for o in opts), default=-1)
        self._birthday[gid] = value
        return value

    def subpositions(self, gid: GameId) -> frozenset[GameId]:
        """The game together with all its iterated options."""
        self._check(gid)
        cached = self._subpositions.get(gid)
        if cached is not None:
            return cached
        g = self.game(gid)
        acc = {gid}
        for o in g.left + g.right:
            acc |= self.subpositions(o)
        result = frozenset(acc)
        self._subpositions[gid] = result
        return result

    def nim_value(self, gid: GameId) -> int | None:
        """k when the game is *k, else None."""
        self._check(gid)
        if gid in self._nim_value:
            return self._nim_value[gid]
        g = self.game(gid)
        value: int | None = None
        if g.left == g.right:
            k = len(g.left)
            if all(self.nim_value(o) is not None for o in g.left):
                if set(g.left) == {self.nimber(i) for i in range(k)}:
                    value = k
        self._nim_value[gid] = value
        return value

    # -- disjunctive sums as single nodes -----------------------------------

    def flatten_sum(self, components: Iterable[GameId] | Mapping[GameId, int]) -> tuple[GameId, ...]:
        """Drop zeros and expand materialized sum nodes into their parts."""
        parts: list[GameId] = []
        for gid, mult in sorted(_as_multiset(components).items()):
            self._check(gid)
            if gid == ZERO:
                continue
            sub = self._decomposition.get(gid)
            parts.extend((sub if sub is not None else (gid,)) * mult)
        return tuple(sorted(parts))

    def decomposition(self, gid: GameId) -> tuple[GameId, ...] | None:
        return self._decomposition.get(self._check(gid))

    def sum_as_game(self, components: Iterable[GameId] | Mapping[GameId, int]) -> GameId:
        """Materialize a disjunctive sum as one game node.

        The node's options are the options of the sum; the flattened part
        list is recorded so positions containing the node can be rewritten
        back into the sum it denotes.
        """
        parts = self.flatten_sum(components)
        if not parts:
            return ZERO
        if len(parts) == 1:
            return parts[0]
        cached = self._sum_nodes.get(parts)
        if cached is not None:
            return cached
        left: set[GameId] = set()
        right: set[GameId] = set()
        for i, gid in enumerate(parts):
            if i and parts[i - 1] == gid:
                continue  # identical component, same successors
            rest = parts[:i] + parts[i + 1 :]
            g = self.game(gid)
            for o in g.left:
                left.add(self.sum_as_game(rest + (o,)))
            for o in g.right:
                right.add(self.sum_as_game(rest + (o,)))
        node = self.make_game(left, right)
        self._sum_nodes[parts] = node
        self._decomposition.setdefault(node, parts)
        return node

    # -- formatting ----------------------------------------------------------

    def format_game(self, gid: GameId) -> str:
        """Canonical text form; round-trips through parse_game."""
        self._check(gid)
        cached = self._format.get(gid)
        if cached is not None:
            return cached
        v = self.nim_value(gid)
        if v == 0:
            text = "0"
        elif v == 1:
            text = "*"
        elif v is not None:
            text = f"*{v}"
        elif gid == self.one():
            text = "1"
        elif gid == self.bar_one():
            text = "~1"
        else:
            g = self.game(gid)
            left = ",".join(self._format_option(o) for o in self._sorted_options(g.left))
            right = ",".join(self._format_option(o) for o in self._sorted_options(g.right))
            text = "{" + left + "|" + right + "}"
        self._format[gid] = text
        return text

    def _format_option(self, gid: GameId) -> str:
        # a materialized sum reads better (and still round-trips) as a sum
        parts = self._decomposition.get(gid)
        if parts is not None:
            return self.format_sum(parts)
        return self.format_game(gid)

    def _sorted_options(self, opts: tuple[GameId, ...]) -> list[GameId]:
        return sorted(opts, key=lambda o: (self.birthday(o), self._format_option(o)))

    def format_sum(self, position: Iterable[GameId] | Mapping[GameId, int]) -> str:
        """Render a multiset of components as a sum expression."""
        bag = _as_multiset(position)
        if not bag:
            return "0"
        items = sorted(bag.items(), key=lambda kv: (self.birthday(kv[0]), self.format_game(kv[0])))
        parts = []
        for gid, mult in items:
            text = self.format_game(gid)
            if mult == 1:
                parts.append(text)
            elif text[0].isdigit():
                # "2" + "1" would lex as the integer 21; spell the sum out
                parts.extend([text] * mult)
            else:
                parts.append(f"{mult}{text}")
        return "+".join(parts)

    # -- parsing ---------------------------------------------------------------

    def parse_game(self, text: str) -> Counter:
        """Parse a sum expression into a multiset of summand GameIds.

        Grammar: expr := term ("+" term)*; term := [count] atom;
        atom := "0" | "1" | "~1" | "*"[decimal] | "{" exprlist "|" exprlist "}".
        A sum expression inside an option list is materialized as one node.
        """
        return _Parser(self, text).parse()

    def engine(self):
        """Store-wide shared outcome engine (lazy; memo persists)."""
        if self._engine is None:
            from .outcomes import OutcomeEngine

            self._engine = OutcomeEngine(self)
        return self._engine


_ATOM_STARTERS = ("num", "star", "tilde1", "lbrace")


class _Parser:
    def __init__(self, store: GameStore, text: str):
        self.store = store
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[tuple[str, int | None, int]]:
        tokens = []
        i, n = 0, len(text)
        while i < n:
            c = text[i]
            if c.isspace():
                i += 1
                continue
            if c.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                tokens.append(("num", int(text[i:j]), i))
                i = j
            elif c == "*":
                j = i + 1
                while j < n and text[j].isdigit():
                    j += 1
                value = int(text[i + 1 : j]) if j > i + 1 else 1
                tokens.append(("star", value, i))
                i = j
            elif c == "~":
                if text[i + 1 : i + 2] != "1":
                    raise ParseError("expected '1' after '~'", i)
                tokens.append(("tilde1", None, i))
                i += 2
            elif c == "{":
                tokens.append(("lbrace", None, i))
                i += 1
            elif c == "}":
                tokens.append(("rbrace", None, i))
                i += 1
            elif c == "|":
                tokens.append(("bar", None, i))
                i += 1
            elif c == ",":
                tokens.append(("comma", None, i))
                i += 1
            elif c == "+":
                tokens.append(("plus", None, i))
                i += 1
            else:
                raise ParseError(f"unknown token {c!r}", i)
        tokens.append(("end", None, n))
        return tokens

    def _peek(self, ahead: int = 0) -> tuple[str, int | None, int]:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def _next(self) -> tuple[str, int | None, int]:
        tok = self.tokens[self.pos]
        if tok[0] != "end":
            self.pos += 1
        return tok

    def parse(self) -> Counter:
        result = self._expr()
        kind, _, pos = self._peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return result

    def _expr(self) -> Counter:
        bag = self._term()
        while self._peek()[0] == "plus":
            self._next()
            bag += self._term()
        return bag

    def _term(self) -> Counter:
        count = 1
        kind, value, pos = self._peek()
        if kind == "num" and value is not None and value >= 1 and self._peek(1)[0] in _ATOM_STARTERS:
            count = value
            self._next()
        gid = self._atom()
        bag = Counter()
        if gid != ZERO:
            bag[gid] = count
        return bag

    def _atom(self) -> GameId:
        kind, value, pos = self._next()
        if kind == "num":
            if value == 0:
                return ZERO
            if value == 1:
                return self.store.one()
            raise ParseError(f"integer literal {value} is not a game", pos)
        if kind == "star":
            return self.store.nimber(value or 0)
        if kind == "tilde1":
            return self.store.bar_one()
        if kind == "lbrace":
            left = self._exprlist()
            bkind, _, bpos = self._next()
            if bkind != "bar":
                raise ParseError("expected '|' in game braces", bpos)
            right = self._exprlist()
            rkind, _, rpos = self._next()
            if rkind != "rbrace":
                raise ParseError("expected '}'", rpos)
            return self.store.make_game(left, right)
        raise ParseError("expected a game atom", pos)

    def _exprlist(self) -> list[GameId]:
        options: list[GameId] = []
        if self._peek()[0] in ("bar", "rbrace"):
            return options
        options.append(self.store.sum_as_game(self._expr()))
        while self._peek()[0] == "comma":
            self._next()
            options.append(self.store.sum_as_game(self._expr()))
        return options
