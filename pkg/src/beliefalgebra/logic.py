"""Propositional vocabulary, formulas, parsing, and model enumeration.

World indices encode truth assignments positionally: reading the atoms in
vocabulary order as binary digits with true = 0 and false = 1 gives the
world's index. Atom ``j`` (0-based) is therefore true in world ``i``
exactly when bit ``n-1-j`` of ``i`` is clear; world 0 makes every atom
true and the all-false world has the highest index. For the two-atom
vocabulary ``(b, f)`` this puts ``b & f`` at index 0, ``b & !f`` at 1,
``!b & f`` at 2 and ``!b & !f`` at 3.

Grammar: ``!``/``~`` negation, ``&`` conjunction, ``|`` disjunction,
``->`` implication (right-associative), ``<->`` biconditional
(right-associative), constants ``T``/``F``, parentheses, and atoms
matching ``[A-Za-z_][A-Za-z0-9_]*``. Binding strength, tightest first:
``!``, ``&``, ``|``, ``->``, ``<->``. ``T`` and ``F`` are reserved and
cannot be atom names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import WorldSet
from .errors import CapExceededError, FormulaSyntaxError, UnknownAtomError

DEFAULT_MAX_ATOMS = 3
RESERVED_NAMES = frozenset({"T", "F"})
_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Vocabulary:
    """An ordered tuple of distinct atom names fixing the world universe."""

    __slots__ = ("atoms", "_index")

    def __init__(self, atoms: Iterable[str], max_atoms: int = DEFAULT_MAX_ATOMS):
        names = tuple(atoms)
        for name in names:
            if not isinstance(name, str) or _ATOM_RE.fullmatch(name) is None:
                raise ValueError(f"invalid atom name {name!r}")
            if name in RESERVED_NAMES:
                raise ValueError(f"atom name {name!r} is reserved")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate atom names in {names!r}")
        if len(names) > max_atoms:
            raise CapExceededError(
                f"{len(names)} atoms exceed the cap of {max_atoms}"
            )
        self.atoms = names
        self._index = {name: j for j, name in enumerate(names)}

    @property
    def world_count(self) -> int:
        return 1 << len(self.atoms)

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownAtomError(name) from None

    def assignment(self, world: int) -> tuple[bool, ...]:
        """Truth value of each atom, in vocabulary order, at ``world``."""
        if not 0 <= world < self.world_count:
            raise ValueError(f"world {world} out of range for {self.world_count} worlds")
        n = len(self.atoms)
        return tuple(not world >> (n - 1 - j) & 1 for j in range(n))

    def world_of(self, values: Sequence[bool]) -> int:
        """Index of the world with the given assignment, in vocabulary order."""
        if len(values) != len(self.atoms):
            raise ValueError(
                f"expected {len(self.atoms)} truth values, got {len(values)}"
            )
        n = len(self.atoms)
        world = 0
        for j, value in enumerate(values):
            if not value:
                world |= 1 << (n - 1 - j)
        return world

    def describe(self, world: int) -> str:
        """Literal conjunction naming ``world``, e.g. ``"b & !f"``."""
        values = self.assignment(world)
        if not self.atoms:
            return "T"
        return " & ".join(
            name if value else f"!{name}" for name, value in zip(self.atoms, values)
        )

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __repr__(self) -> str:
        return f"Vocabulary({list(self.atoms)})"


class Formula:
    """Base class for formula nodes; subclasses are frozen dataclasses."""

    __slots__ = ()

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        raise NotImplementedError

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def implies(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def iff(self, other: "Formula") -> "Formula":
        return Iff(self, other)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str
    index: int

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return bool(assignment[self.index])


@dataclass(frozen=True, slots=True)
class Not(Formula):
    child: Formula

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return not self.child.evaluate(assignment)


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return self.left.evaluate(assignment) and self.right.evaluate(assignment)


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return self.left.evaluate(assignment) or self.right.evaluate(assignment)


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return (not self.left.evaluate(assignment)) or self.right.evaluate(assignment)


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return self.left.evaluate(assignment) == self.right.evaluate(assignment)


@dataclass(frozen=True, slots=True)
class Top(Formula):
    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return True


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return False


_Token = tuple[str, str, int]  # kind, text, position


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    length = len(text)
    while pos < length:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if text.startswith("<->", pos):
            tokens.append(("<->", "<->", pos))
            pos += 3
            continue
        if text.startswith("->", pos):
            tokens.append(("->", "->", pos))
            pos += 2
            continue
        if ch in "!~":
            tokens.append(("!", ch, pos))
            pos += 1
            continue
        if ch in "&|()":
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        match = _ATOM_RE.match(text, pos)
        if match:
            word = match.group()
            kind = "const" if word in RESERVED_NAMES else "atom"
            tokens.append((kind, word, pos))
            pos = match.end()
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", pos)
    tokens.append(("end", "", length))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], vocab: Vocabulary):
        self.tokens = tokens
        self.vocab = vocab
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self) -> Formula:
        node = self.iff()
        kind, text, position = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {text!r}", position)
        return node

    def iff(self) -> Formula:
        node = self.implies()
        if self.peek()[0] == "<->":
            self.advance()
            return Iff(node, self.iff())
        return node

    def implies(self) -> Formula:
        node = self.disjunction()
        if self.peek()[0] == "->":
            self.advance()
            return Implies(node, self.implies())
        return node

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.peek()[0] == "|":
            self.advance()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.peek()[0] == "&":
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        kind, _, _ = self.peek()
        if kind == "!":
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind, text, position = self.advance()
        if kind == "(":
            node = self.iff()
            closing = self.advance()
            if closing[0] != ")":
                raise FormulaSyntaxError("expected ')'", closing[2])
            return node
        if kind == "const":
            return Top() if text == "T" else Bottom()
        if kind == "atom":
            return Atom(text, self.vocab.index_of(text))
        if kind == "end":
            raise FormulaSyntaxError("unexpected end of input", position)
        raise FormulaSyntaxError(f"unexpected {text!r}", position)


def parse_formula(text: str, vocab: Vocabulary) -> Formula:
    """Parse ``text`` against ``vocab``; atoms resolve to vocabulary indices."""
    return _Parser(_tokenize(text), vocab).parse()


def evaluate(formula: Formula, assignment: Sequence[bool]) -> bool:
    """Truth value of ``formula`` under one assignment (atom order = vocab order)."""
    return formula.evaluate(assignment)


def models(formula: Formula | str, vocab: Vocabulary) -> WorldSet:
    """The set of worlds satisfying ``formula``, by exhaustive enumeration."""
    if isinstance(formula, str):
        formula = parse_formula(formula, vocab)
    mask = 0
    for world in range(vocab.world_count):
        if formula.evaluate(vocab.assignment(world)):
            mask |= 1 << world
    return WorldSet(vocab.world_count, mask)


def characteristic_formula(world: int, vocab: Vocabulary) -> Formula:
    """The literal conjunction true exactly at ``world``."""
    values = vocab.assignment(world)
    node: Formula | None = None
    for name, value in zip(vocab.atoms, values):
        literal: Formula = Atom(name, vocab.index_of(name))
        if not value:
            literal = Not(literal)
        node = literal if node is None else And(node, literal)
    return Top() if node is None else node
