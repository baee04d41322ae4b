"""Finite world spaces and propositions.

A proposition is the set of atoms (possible worlds) at which it is true.
Sets are stored as Python integers used as bitsets, bit ``i`` standing for
atom ``i`` of the space, so spaces with thousands of atoms stay cheap.

>>> space = make_space(["HH", "HT", "TH", "TT"])
>>> first = space.proposition(["HH", "HT"])
>>> second = space.proposition(["HH", "TH"])
>>> (first & second).labels
('HH',)
>>> entails(first & second, first)
True
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Mapping, Union

from .errors import (
    ArityError,
    FormulaSyntaxError,
    InvariantError,
    SpaceMismatchError,
    UnboundNameError,
)

__all__ = [
    "WorldSpace",
    "Proposition",
    "make_space",
    "combine",
    "entails",
    "parse_formula",
    "parse_expression",
    "format_expression",
    "Name",
    "Not",
    "BinOp",
]


@dataclass(frozen=True, eq=True)
class WorldSpace:
    """An ordered, immutable list of distinct atom labels.

    Equality is structural (same label sequence), so a space rebuilt from
    JSON combines freely with the original.
    """

    atoms: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise InvariantError("a world space needs at least one atom")
        for label in atoms:
            if not isinstance(label, str) or not label:
                raise InvariantError(f"atom labels must be non-empty strings, got {label!r}")
        if len(set(atoms)) != len(atoms):
            seen = set()
            dup = next(a for a in atoms if a in seen or seen.add(a))
            raise InvariantError(f"duplicate atom label {dup!r}")

    def __len__(self):
        return len(self.atoms)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(self.atoms)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.atoms)}

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.atoms)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InvariantError(f"unknown atom {label!r}") from None

    def full(self) -> Proposition:
        return Proposition(self, self.full_mask)

    def empty(self) -> Proposition:
        return Proposition(self, 0)

    def atom(self, label: str) -> Proposition:
        return Proposition(self, 1 << self.index(label), name=label)

    def proposition(self, labels: Iterable[str], name: str | None = None) -> Proposition:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return Proposition(self, mask, name=name)

    def from_indices(self, indices: Iterable[int], name: str | None = None) -> Proposition:
        mask = 0
        for i in indices:
            if not 0 <= i < len(self.atoms):
                raise InvariantError(f"atom index {i} out of range")
            mask |= 1 << i
        return Proposition(self, mask, name=name)

    def atom_bindings(self) -> dict[str, Proposition]:
        """Singleton propositions keyed by atom label."""
        return {label: Proposition(self, 1 << i, name=label) for i, label in enumerate(self.atoms)}

    def to_json(self) -> dict:
        return {"atoms": list(self.atoms)}

    @classmethod
    def from_json(cls, data: Mapping) -> WorldSpace:
        if not isinstance(data, Mapping) or "atoms" not in data:
            raise InvariantError("world space JSON must be an object with an 'atoms' list")
        return cls(tuple(data["atoms"]))


def same_space(a: WorldSpace, b: WorldSpace) -> bool:
    return a is b or a == b


def check_space(expected: WorldSpace, *others: WorldSpace) -> None:
    for other in others:
        if not same_space(expected, other):
            raise SpaceMismatchError("operands are defined over different world spaces")


@dataclass(frozen=True)
class Proposition:
    """A subset of the atoms of ``space``; ``name`` is display-only."""

    space: WorldSpace
    mask: int
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.space.atoms):
            raise InvariantError("proposition members must be atoms of its space")

    @property
    def members(self) -> tuple[int, ...]:
        """Atom indices in ascending order."""
        bits = bin(self.mask)[:1:-1]
        return tuple(i for i, c in enumerate(bits) if c == "1")

    @property
    def labels(self) -> tuple[str, ...]:
        atoms = self.space.atoms
        return tuple(atoms[i] for i in self.members)

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, label: str) -> bool:
        return bool(self.mask >> self.space.index(label) & 1)

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == self.space.full_mask

    def named(self, name: str) -> Proposition:
        return Proposition(self.space, self.mask, name=name)

    def __and__(self, other: Proposition) -> Proposition:
        check_space(self.space, other.space)
        return Proposition(self.space, self.mask & other.mask)

    def __or__(self, other: Proposition) -> Proposition:
        check_space(self.space, other.space)
        return Proposition(self.space, self.mask | other.mask)

    def __invert__(self) -> Proposition:
        return Proposition(self.space, self.space.full_mask & ~self.mask)

    def implies(self, other: Proposition) -> Proposition:
        return ~self | other

    def __repr__(self):
        shown = self.name if self.name is not None else "{" + ",".join(self.labels) + "}"
        return f"Proposition({shown})"


def make_space(labels: Iterable[str]) -> WorldSpace:
    return WorldSpace(tuple(labels))


_ARITY = {"and": 2, "or": 2, "implies": 2, "not": 1}


def combine(op: str, *args: Proposition) -> Proposition:
    """Apply a boolean connective (``and``, ``or``, ``not``, ``implies``)."""
    if op not in _ARITY:
        raise ArityError(f"unknown connective {op!r}")
    if len(args) != _ARITY[op]:
        raise ArityError(f"{op!r} takes {_ARITY[op]} argument(s), got {len(args)}")
    check_space(args[0].space, *(a.space for a in args[1:]))
    if op == "not":
        return ~args[0]
    a, b = args
    if op == "and":
        return a & b
    if op == "or":
        return a | b
    return a.implies(b)


def entails(a: Proposition, b: Proposition) -> bool:
    """True iff every atom of ``a`` is an atom of ``b``."""
    check_space(a.space, b.space)
    return a.mask & ~b.mask == 0


# --- formula parsing -------------------------------------------------------
#
#   implication := disjunction ( "->" implication )?
#   disjunction := conjunction ( "|" conjunction )*
#   conjunction := negation ( "&" negation )*
#   negation    := "~" negation | primary
#   primary     := NAME | "(" implication ")"


@dataclass(frozen=True)
class Name:
    ident: str
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of "&", "|", "->"
    left: "Expr"
    right: "Expr"


Expr = Union[Name, Not, BinOp]

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z0-9_]+)|(?P<op>->|[&|~()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = "name" if m.group("name") else "op"
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value or kind == "end":
            raise FormulaSyntaxError(f"expected {value!r}", pos)

    def implication(self):
        left = self.disjunction()
        if self.peek()[1] == "->" and self.peek()[0] == "op":
            self.take()
            return BinOp("->", left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek()[:2] == ("op", "|"):
            self.take()
            left = BinOp("|", left, self.conjunction())
        return left

    def conjunction(self):
        left = self.negation()
        while self.peek()[:2] == ("op", "&"):
            self.take()
            left = BinOp("&", left, self.negation())
        return left

    def negation(self):
        if self.peek()[:2] == ("op", "~"):
            self.take()
            return Not(self.negation())
        return self.primary()

    def primary(self):
        kind, val, pos = self.take()
        if kind == "name":
            return Name(val, pos)
        if kind == "op" and val == "(":
            inner = self.implication()
            self.expect(")")
            return inner
        if kind == "end":
            raise FormulaSyntaxError("unexpected end of formula", pos)
        raise FormulaSyntaxError(f"unexpected {val!r}", pos)


def parse_expression(text: str) -> Expr:
    """Parse formula text into an expression tree without evaluating it."""
    parser = _Parser(text)
    expr = parser.implication()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected {val!r}", pos)
    return expr


def format_expression(expr: Expr) -> str:
    """Render an expression tree fully parenthesised; reparses to the same tree."""
    if isinstance(expr, Name):
        return expr.ident
    if isinstance(expr, Not):
        return "~" + format_expression(expr.operand)
    return f"({format_expression(expr.left)} {expr.op} {format_expression(expr.right)})"


def evaluate(expr: Expr, space: WorldSpace, bindings: Mapping[str, Proposition]) -> Proposition:
    if isinstance(expr, Name):
        try:
            prop = bindings[expr.ident]
        except KeyError:
            raise UnboundNameError(expr.ident, expr.position) from None
        check_space(space, prop.space)
        return prop
    if isinstance(expr, Not):
        return ~evaluate(expr.operand, space, bindings)
    left = evaluate(expr.left, space, bindings)
    right = evaluate(expr.right, space, bindings)
    if expr.op == "&":
        return left & right
    if expr.op == "|":
        return left | right
    return left.implies(right)


def parse_formula(
    text: str, space: WorldSpace, bindings: Mapping[str, Proposition] | None = None
) -> Proposition:
    """Evaluate formula ``text`` to the proposition it denotes.

    Names are looked up in ``bindings``; when ``bindings`` is omitted the
    atom labels of ``space`` are bound to their singleton propositions.
    Precedence from tightest: ``~``, ``&``, ``|``, ``->`` (right-associative).
    """
    if bindings is None:
        bindings = space.atom_bindings()
    return evaluate(parse_expression(text), space, bindings)


def intersection(props: Iterable[Proposition], space: WorldSpace) -> Proposition:
    mask = reduce(lambda acc, p: acc & p.mask, props, space.full_mask)
    return Proposition(space, mask)
