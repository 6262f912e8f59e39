"""Propositional signatures, formulas, and model sets.

Worlds are plain integers: bit ``i`` of a world holds the truth value of
atom ``i`` in signature order.  A set of worlds is an integer bitmask with
one bit per world (bit ``w`` set iff world ``w`` is a member), so semantic
operations reduce to integer arithmetic.  The textual form of a world is a
bitstring in atom order, e.g. ``"10"`` means the first atom is true and the
second false.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterator

ATOM_PATTERN = re.compile(r"[a-z][a-z0-9_]*")

RESERVED_WORDS = frozenset({"true", "false"})

MAX_ATOMS = 26


class FormulaError(ValueError):
    """Base class for formula parsing and signature errors."""


class FormulaSyntaxError(FormulaError):
    """Malformed formula text; ``position`` is the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownAtomError(FormulaError):
    """Formula references an atom that the signature does not declare."""

    def __init__(self, name: str, position: int = -1):
        where = f" (at position {position})" if position >= 0 else ""
        super().__init__(f"unknown atom {name!r}{where}")
        self.name = name
        self.position = position


@dataclass(frozen=True)
class Signature:
    """An ordered list of distinct atom names.

    The universe has one world per truth assignment, ``2**len(atoms)`` in
    total.  Atom names must match ``[a-z][a-z0-9_]*`` and may not shadow the
    ``true``/``false`` literals.
    """

    atoms: tuple[str, ...]

    def __init__(self, atoms) -> None:
        object.__setattr__(self, "atoms", tuple(atoms))
        if not 1 <= len(self.atoms) <= MAX_ATOMS:
            raise ValueError(f"signature needs 1..{MAX_ATOMS} atoms, got {len(self.atoms)}")
        seen = set()
        for name in self.atoms:
            if not isinstance(name, str) or not ATOM_PATTERN.fullmatch(name):
                raise ValueError(f"invalid atom name {name!r}")
            if name in RESERVED_WORDS:
                raise ValueError(f"atom name {name!r} collides with a formula literal")
            if name in seen:
                raise ValueError(f"duplicate atom name {name!r}")
            seen.add(name)
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.atoms)})

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def n_worlds(self) -> int:
        return 1 << len(self.atoms)

    @property
    def universe(self) -> int:
        """Bitmask of all worlds."""
        return (1 << self.n_worlds) - 1

    def atom_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownAtomError(name) from None

    def atom_models(self, index: int) -> int:
        """World-set mask of the worlds that make atom ``index`` true."""
        return _atom_models(self.n_atoms, index)


def _atom_models(n_atoms: int, index: int) -> int:
    # Periodic pattern: within each block of 2**(index+1) worlds the upper
    # half has the atom true.  Doubled up to the full universe width.
    if not 0 <= index < n_atoms:
        raise IndexError(f"atom index {index} out of range")
    half = 1 << index
    mask = ((1 << half) - 1) << half
    span = half << 1
    n_worlds = 1 << n_atoms
    while span < n_worlds:
        mask |= mask << span
        span <<= 1
    return mask


# --- world and world-set helpers -------------------------------------------

def world_to_bits(world: int, n_atoms: int) -> str:
    """Render a world as a bitstring in atom order (first atom first)."""
    return "".join("1" if (world >> i) & 1 else "0" for i in range(n_atoms))


def world_from_bits(bits: str) -> int:
    if not bits or any(c not in "01" for c in bits):
        raise ValueError(f"invalid world bitstring {bits!r}")
    return sum(1 << i for i, c in enumerate(bits) if c == "1")


def worldset_to_bits(mask: int, n_atoms: int) -> list[str]:
    """List a world set as bitstrings, most-true-first (descending)."""
    bits = [world_to_bits(w, n_atoms) for w in iter_worlds(mask)]
    return sorted(bits, reverse=True)


def worldset_from_bits(bits: list[str]) -> int:
    mask = 0
    for b in bits:
        mask |= 1 << world_from_bits(b)
    return mask


def iter_worlds(mask: int) -> Iterator[int]:
    """Worlds of a set mask in increasing integer order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --- formula AST ------------------------------------------------------------

class Formula:
    """Base class of the propositional AST."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


TOP = Top()
BOTTOM = Bottom()


# --- parser -----------------------------------------------------------------

_TOKEN_SPECS = (
    ("IFF", "<->"),
    ("IMPLIES", "->"),
    ("NOT", "!"),
    ("AND", "&"),
    ("OR", "|"),
    ("LPAREN", "("),
    ("RPAREN", ")"),
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        for kind, lit in _TOKEN_SPECS:
            if text.startswith(lit, pos):
                tokens.append((kind, lit, pos))
                pos += len(lit)
                break
        else:
            m = ATOM_PATTERN.match(text, pos)
            if m:
                word = m.group(0)
                if word == "true":
                    tokens.append(("TRUE", word, pos))
                elif word == "false":
                    tokens.append(("FALSE", word, pos))
                else:
                    tokens.append(("ATOM", word, pos))
                pos = m.end()
            else:
                raise FormulaSyntaxError(f"unexpected character {ch!r}", pos)
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    """Recursive-descent parser.

    Precedence, tightest first: ``!``, ``&``, ``|``, ``->``, ``<->``.
    ``->`` and ``<->`` associate to the right, ``&`` and ``|`` to the left.
    """

    def __init__(self, text: str, sig: Signature):
        self.tokens = _tokenize(text)
        self.sig = sig
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        node = self.parse_iff()
        kind, value, at = self.peek()
        if kind != "END":
            raise FormulaSyntaxError(f"unexpected token {value!r}", at)
        return node

    def parse_iff(self) -> Formula:
        left = self.parse_implies()
        if self.peek()[0] == "IFF":
            self.advance()
            return Iff(left, self.parse_iff())
        return left

    def parse_implies(self) -> Formula:
        left = self.parse_or()
        if self.peek()[0] == "IMPLIES":
            self.advance()
            return Implies(left, self.parse_implies())
        return left

    def parse_or(self) -> Formula:
        node = self.parse_and()
        while self.peek()[0] == "OR":
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> Formula:
        node = self.parse_unary()
        while self.peek()[0] == "AND":
            self.advance()
            node = And(node, self.parse_unary())
        return node

    def parse_unary(self) -> Formula:
        kind, value, at = self.advance()
        if kind == "NOT":
            return Not(self.parse_unary())
        if kind == "ATOM":
            if value not in self.sig._index:
                raise UnknownAtomError(value, at)
            return Atom(value)
        if kind == "TRUE":
            return TOP
        if kind == "FALSE":
            return BOTTOM
        if kind == "LPAREN":
            node = self.parse_iff()
            k, v, p = self.advance()
            if k != "RPAREN":
                if k == "END":
                    raise FormulaSyntaxError("unexpected end of input, expected ')'", p)
                raise FormulaSyntaxError(f"expected ')', found {v!r}", p)
            return node
        if kind == "END":
            raise FormulaSyntaxError("unexpected end of input", at)
        raise FormulaSyntaxError(f"unexpected token {value!r}", at)


def parse_formula(text: str, sig: Signature) -> Formula:
    """Parse formula text over the given signature.

    Raises :class:`FormulaSyntaxError` on malformed input and
    :class:`UnknownAtomError` for atoms absent from the signature.
    """
    return _Parser(text, sig).parse()


_PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}


def format_formula(f: Formula) -> str:
    """Render a formula in the parser's grammar with minimal parentheses."""

    def prec(node: Formula) -> int:
        return _PRECEDENCE.get(type(node), 6)

    def render(node: Formula) -> str:
        if isinstance(node, Atom):
            return node.name
        if isinstance(node, Top):
            return "true"
        if isinstance(node, Bottom):
            return "false"
        if isinstance(node, Not):
            inner = render(node.operand)
            if prec(node.operand) < 5:
                inner = f"({inner})"
            return f"!{inner}"
        if isinstance(node, (And, Or)):
            op = "&" if isinstance(node, And) else "|"
            p = prec(node)
            left = render(node.left)
            if prec(node.left) < p:
                left = f"({left})"
            right = render(node.right)
            if prec(node.right) <= p:
                right = f"({right})"
            return f"{left} {op} {right}"
        if isinstance(node, (Implies, Iff)):
            op = "->" if isinstance(node, Implies) else "<->"
            p = prec(node)
            left = render(node.left)
            if prec(node.left) <= p:
                left = f"({left})"
            right = render(node.right)
            if prec(node.right) < p:
                right = f"({right})"
            return f"{left} {op} {right}"
        raise TypeError(f"not a formula node: {node!r}")

    return render(f)


# --- semantics --------------------------------------------------------------

def models(f: Formula, sig: Signature) -> int:
    """World-set mask of the models of ``f`` under classical semantics."""
    universe = sig.universe
    if isinstance(f, Atom):
        return sig.atom_models(sig.atom_index(f.name))
    if isinstance(f, Not):
        return universe & ~models(f.operand, sig)
    if isinstance(f, And):
        return models(f.left, sig) & models(f.right, sig)
    if isinstance(f, Or):
        return models(f.left, sig) | models(f.right, sig)
    if isinstance(f, Implies):
        return universe & (~models(f.left, sig) | models(f.right, sig))
    if isinstance(f, Iff):
        return universe & ~(models(f.left, sig) ^ models(f.right, sig))
    if isinstance(f, Top):
        return universe
    if isinstance(f, Bottom):
        return 0
    raise TypeError(f"not a formula node: {f!r}")


def entails(f: Formula, g: Formula, sig: Signature) -> bool:
    return models(f, sig) & ~models(g, sig) == 0


def equivalent(f: Formula, g: Formula, sig: Signature) -> bool:
    return models(f, sig) == models(g, sig)


def world_literal(world: int, sig: Signature) -> Formula:
    """Complete conjunction naming exactly one world."""
    lits = [
        Atom(name) if (world >> i) & 1 else Not(Atom(name))
        for i, name in enumerate(sig.atoms)
    ]
    return reduce(And, lits)


def negated_world(world: int, sig: Signature) -> Formula:
    """Formula whose models are every world except the given one."""
    if not 0 <= world < sig.n_worlds:
        raise ValueError(f"world {world} outside universe")
    return Not(world_literal(world, sig))


def equiv_wrt(set1: int, set2: int, alpha: Formula, sig: Signature) -> bool:
    """World-set equivalence relative to a formula.

    True iff both sets contain the same models of ``alpha``.
    """
    a = models(alpha, sig)
    return set1 & a == set2 & a


def formula_from_worldset(mask: int, sig: Signature) -> Formula:
    """Canonical syntactic representative of a semantic class.

    Returns ``false`` for the empty set, ``true`` for the full universe,
    otherwise a disjunction of complete conjunctions.
    """
    if mask == 0:
        return BOTTOM
    if mask == sig.universe:
        return TOP
    worlds = sorted(iter_worlds(mask), key=lambda w: world_to_bits(w, sig.n_atoms), reverse=True)
    return reduce(Or, (world_literal(w, sig) for w in worlds))
