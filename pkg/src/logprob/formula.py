"""Propositional formulas over negation and conjunction.

Atoms are leaves, so the closure of a set of atoms under ``Neg`` and ``Conj``
is exactly the set of ``Formula`` values built from them.  A truth assignment
maps atom names to 0/1 and extends to every formula by

    g(~A) = 1 - g(A)        g(A & B) = g(A) * g(B)

Concrete syntax::

    atom    = letter { letter | digit | "_" }
    formula = atom | ("~" | "!") formula | "(" formula ")" | formula "&" formula

``&`` is left-associative and ``~`` binds tighter.  ``render_formula`` always
writes the fully parenthesized form, e.g. ``(~(A & (~A)))``.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Union

DEFAULT_ATOM_LIMIT = 20


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not _is_identifier(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")

    def __str__(self):
        return render_formula(self)


@dataclass(frozen=True)
class Neg:
    inner: "Formula"

    def __str__(self):
        return render_formula(self)


@dataclass(frozen=True)
class Conj:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return render_formula(self)


Formula = Union[Atom, Neg, Conj]
TruthAssignment = Mapping[str, int]


class FormulaSyntaxError(ValueError):
    """Raised for malformed formula text; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class UnboundAtomError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"atom {self.name!r} is not bound by the assignment"


class AtomLimitError(ValueError):
    pass


def _is_identifier(name: str) -> bool:
    if not name or not name[0].isascii() or not name[0].isalpha():
        return False
    return all(c.isascii() and (c.isalnum() or c == "_") for c in name)


# ---------------------------------------------------------------------------
# Parsing and rendering
# ---------------------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()&":
            tokens.append((c, i))
            i += 1
        elif c in "~!":
            tokens.append(("~", i))
            i += 1
        elif c.isascii() and c.isalpha():
            j = i + 1
            while j < len(text) and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((text[i:j], i))
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {c!r}", text, i)
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return (None, len(self.text))

    def error(self, message):
        raise FormulaSyntaxError(message, self.text, self.peek()[1])

    def parse(self) -> Formula:
        if not self.tokens:
            self.error("empty formula")
        f = self.conjunction()
        tok, _ = self.peek()
        if tok is not None:
            self.error(f"unexpected {tok!r}")
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "&":
            self.i += 1
            f = Conj(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok, _ = self.peek()
        if tok == "~":
            self.i += 1
            return Neg(self.unary())
        if tok == "(":
            self.i += 1
            f = self.conjunction()
            if self.peek()[0] != ")":
                self.error("expected ')'")
            self.i += 1
            return f
        if tok is None:
            self.error("expected atom, got end of input")
        if tok in ")&":
            self.error(f"expected atom, got {tok!r}")
        self.i += 1
        return Atom(tok)


def parse_formula(text: str) -> Formula:
    """Parse formula text; raises ``FormulaSyntaxError`` with a position."""
    return _Parser(text).parse()


def render_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Neg):
        return f"(~{render_formula(f.inner)})"
    return f"({render_formula(f.left)} & {render_formula(f.right)})"


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------


def _natural_key(name: str):
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name)]


def atoms_of(f: Formula) -> list[str]:
    """Distinct atom names, sorted with embedded numbers compared numerically."""
    seen = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            seen.add(node.name)
        elif isinstance(node, Neg):
            stack.append(node.inner)
        else:
            stack.append(node.right)
            stack.append(node.left)
    return sorted(seen, key=_natural_key)


def connective_count(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Neg):
        return 1 + connective_count(f.inner)
    return 1 + connective_count(f.left) + connective_count(f.right)


def atom_occurrences(f: Formula) -> int:
    if isinstance(f, Atom):
        return 1
    if isinstance(f, Neg):
        return atom_occurrences(f.inner)
    return atom_occurrences(f.left) + atom_occurrences(f.right)


def depth(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Neg):
        return 1 + depth(f.inner)
    return 1 + max(depth(f.left), depth(f.right))


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------


def eval_formula(f: Formula, g: TruthAssignment) -> int:
    if isinstance(f, Atom):
        try:
            v = g[f.name]
        except KeyError:
            raise UnboundAtomError(f.name) from None
        if v not in (0, 1):
            raise ValueError(f"atom {f.name!r} bound to {v!r}, expected 0 or 1")
        return int(v)
    if isinstance(f, Neg):
        return 1 - eval_formula(f.inner, g)
    return eval_formula(f.left, g) * eval_formula(f.right, g)


def assignments(names: Sequence[str]) -> Iterator[dict[str, int]]:
    """All 0/1 assignments over ``names`` in lexicographic order (first name most significant)."""
    for bits in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, bits))


def _check_limit(names, limit):
    if len(names) > limit:
        raise AtomLimitError(f"{len(names)} atoms exceeds the limit of {limit}")


def truth_table(f: Formula, limit: int = DEFAULT_ATOM_LIMIT) -> list[tuple[dict[str, int], int]]:
    names = atoms_of(f)
    _check_limit(names, limit)
    return [(g, eval_formula(f, g)) for g in assignments(names)]


def falsifying_assignment(f: Formula, limit: int = DEFAULT_ATOM_LIMIT) -> dict[str, int] | None:
    """First assignment (in table order) under which ``f`` is 0, or None."""
    names = atoms_of(f)
    _check_limit(names, limit)
    for g in assignments(names):
        if eval_formula(f, g) == 0:
            return g
    return None


def is_tautology(f: Formula, limit: int = DEFAULT_ATOM_LIMIT) -> bool:
    return falsifying_assignment(f, limit) is None


def literal_form(f: Formula, g: TruthAssignment) -> Formula:
    """``f`` if it is true under ``g``, otherwise ``(~f)``."""
    return f if eval_formula(f, g) == 1 else Neg(f)


def table_tsv(f: Formula, limit: int = DEFAULT_ATOM_LIMIT) -> str:
    names = atoms_of(f)
    lines = ["\t".join([*names, "value"])]
    for g, v in truth_table(f, limit):
        lines.append("\t".join([*(str(g[n]) for n in names), str(v)]))
    return "\n".join(lines) + "\n"


def random_formula(rng: random.Random, names: Sequence[str], max_depth: int,
                   leaf_prob: float = 0.3) -> Formula:
    """Random formula over ``names`` of depth at most ``max_depth``."""
    if max_depth == 0 or rng.random() < leaf_prob:
        return Atom(rng.choice(names))
    if rng.random() < 0.4:
        return Neg(random_formula(rng, names, max_depth - 1, leaf_prob))
    return Conj(random_formula(rng, names, max_depth - 1, leaf_prob),
                random_formula(rng, names, max_depth - 1, leaf_prob))
