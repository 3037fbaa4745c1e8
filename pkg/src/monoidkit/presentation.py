"""Presentations, homogeneity certificates, budgets, and the brute-force oracle.

A presentation is an alphabet plus a duplicate-free, insertion-ordered set
of oriented relations (deglex-greater side first).  The congruence the
relations generate is explored directly by :func:`oracle_equivalent`, a
breadth-first closure that serves as ground truth for the completion
engines on small instances.

Homogeneity is certified by a pseudolength: an integer functional that is
invariant under the congruence and strictly increases under left
multiplication.  The built-in family is

    lam(u) = |u| + sum over pairs (x, y) of c_xy * #{i<j : u[i]=x, u[j]=y}

with non-negative integer coefficients; plain length is the all-zero
instance.  Within this family, invariance in all contexts holds exactly
when every relation preserves the functional value and the letter counts
of every generator that appears in a weighted pair, which is what
:func:`check_pseudolength` tests.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Generic, TypeVar

from .words import (
    Alphabet,
    DeglexOrder,
    Word,
    WordError,
    display_word,
    format_word,
    mirror,
    parse_word,
)

T = TypeVar("T")

DEFINITE = "definite"
DEFINITE_NO = "definite-no"
BUDGET_EXHAUSTED = "budget-exhausted"


class BudgetExceeded(RuntimeError):
    """Internal signal: a safety cap was hit inside a terminating procedure."""

    def __init__(self, dimension: str):
        super().__init__(f"budget exhausted: {dimension}")
        self.dimension = dimension


@dataclass(frozen=True)
class Outcome(Generic[T]):
    """Three-valued result: definite answer, definite no, or budget hit.

    ``value`` carries the witness/trace payload where applicable; for a
    budget-exhausted outcome it may hold a partial result and
    ``exhausted`` names the budget dimension that was hit.
    """

    status: str
    value: T | None = None
    exhausted: str | None = None

    @classmethod
    def yes(cls, value: T | None = None) -> "Outcome[T]":
        return cls(DEFINITE, value)

    @classmethod
    def no(cls, value: T | None = None) -> "Outcome[T]":
        return cls(DEFINITE_NO, value)

    @classmethod
    def out_of_budget(cls, dimension: str, value: T | None = None) -> "Outcome[T]":
        return cls(BUDGET_EXHAUSTED, value, dimension)

    @property
    def is_definite(self) -> bool:
        return self.status == DEFINITE

    @property
    def is_definite_no(self) -> bool:
        return self.status == DEFINITE_NO

    @property
    def is_exhausted(self) -> bool:
        return self.status == BUDGET_EXHAUSTED


@dataclass(frozen=True)
class SearchBudget:
    """Explicit caps for every potentially diverging search.

    max_word_len bounds words materialised by the oracle and the length of
    relation sides a completion may add; the reversing search is bounded
    by max_steps (node expansions) and max_frontier (queue size) instead,
    since its intermediate signed words are legitimately much longer than
    the relations they certify.
    """

    max_steps: int = 10**6
    max_word_len: int = 32
    max_relations: int = 64
    max_frontier: int = 10**5

    def __post_init__(self) -> None:
        for name in ("max_steps", "max_word_len", "max_relations", "max_frontier"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class Relation:
    """An oriented relation: lhs is the deglex-greater side."""

    lhs: Word
    rhs: Word

    def as_pair(self) -> tuple[Word, Word]:
        return (self.lhs, self.rhs)

    def __str__(self) -> str:
        return f"{display_word(self.lhs)} = {display_word(self.rhs)}"


def orient(u: Word, v: Word, order: DeglexOrder) -> Relation | None:
    """Orient a pair into a Relation; None marks the trivial pair u = v."""
    if not u or not v:
        raise WordError("relation sides must be nonempty")
    order.alphabet.check_word(u)
    order.alphabet.check_word(v)
    cmp = order.compare(u, v)
    if cmp == 0:
        return None
    return Relation(u, v) if cmp > 0 else Relation(v, u)


@dataclass(frozen=True)
class Presentation:
    """Alphabet plus oriented, duplicate-free relations in insertion order."""

    alphabet: Alphabet
    relations: tuple[Relation, ...]
    declared_pseudolength: "PseudolengthSpec | None" = field(default=None, compare=False)

    @property
    def order(self) -> DeglexOrder:
        return DeglexOrder(self.alphabet)

    @classmethod
    def from_pairs(
        cls,
        alphabet: Alphabet,
        pairs: list[tuple[Word, Word]],
        declared_pseudolength: "PseudolengthSpec | None" = None,
    ) -> "Presentation":
        """Orient the pairs, silently dropping trivial and duplicate ones."""
        order = DeglexOrder(alphabet)
        seen: set[tuple[Word, Word]] = set()
        relations: list[Relation] = []
        for u, v in pairs:
            rel = orient(u, v, order)
            if rel is None or rel.as_pair() in seen:
                continue
            seen.add(rel.as_pair())
            relations.append(rel)
        return cls(alphabet, tuple(relations), declared_pseudolength)

    def with_relations(self, relations: tuple[Relation, ...]) -> "Presentation":
        return Presentation(self.alphabet, relations, self.declared_pseudolength)

    def add_pair(self, u: Word, v: Word) -> "Presentation":
        rel = orient(u, v, self.order)
        if rel is None or rel in self.relations:
            return self
        return self.with_relations(self.relations + (rel,))


def mirror_presentation(p: Presentation) -> Presentation:
    """Mirror every relation side; orientation is recomputed afterwards."""
    return Presentation.from_pairs(
        p.alphabet,
        [(mirror(r.lhs), mirror(r.rhs)) for r in p.relations],
        p.declared_pseudolength,
    )


# ---------------------------------------------------------------------------
# Pseudolengths


@dataclass(frozen=True)
class PseudolengthSpec:
    """lam(u) = |u| + sum c_xy * (number of index pairs i<j with x at i, y at j)."""

    pair_coeffs: tuple[tuple[tuple[str, str], int], ...] = ()

    @classmethod
    def plain(cls) -> "PseudolengthSpec":
        return cls()

    @classmethod
    def weighted(cls, coeffs: dict[tuple[str, str], int]) -> "PseudolengthSpec":
        for pair, c in coeffs.items():
            if c < 0:
                raise ValueError(f"coefficient for {pair} must be non-negative")
        items = tuple(sorted((pair, c) for pair, c in coeffs.items() if c))
        return cls(items)

    @property
    def is_plain(self) -> bool:
        return not self.pair_coeffs

    def value(self, word: Word) -> int:
        total = len(word)
        for (x, y), c in self.pair_coeffs:
            seen_x = 0
            pairs = 0
            for g in word:
                if g == y:
                    pairs += seen_x
                if g == x:
                    seen_x += 1
            total += c * pairs
        return total

    def weighted_generators(self) -> set[str]:
        out: set[str] = set()
        for (x, y), _ in self.pair_coeffs:
            out.update((x, y))
        return out

    def mirrored(self) -> "PseudolengthSpec":
        """The functional satisfying mirrored(mirror(u)) = value(u): each
        weighted pair (x, y) becomes (y, x)."""
        return PseudolengthSpec.weighted({(y, x): c for (x, y), c in self.pair_coeffs})

    def __str__(self) -> str:
        if self.is_plain:
            return "length"
        terms = " + ".join(f"{c}*pairs({x},{y})" for (x, y), c in self.pair_coeffs)
        return f"length + {terms}"


def check_pseudolength(p: Presentation, spec: PseudolengthSpec) -> Relation | None:
    """Return None when the functional is a pseudolength for p, else the
    first violating relation.

    Validity requires, for every relation (u, v): lam(u) = lam(v), and for
    every generator involved in a weighted pair, equal letter counts on
    both sides (cross-context pair counts depend only on multiplicities,
    so this is exactly invariance for this functional family).
    """
    weighted = spec.weighted_generators()
    for rel in p.relations:
        if spec.value(rel.lhs) != spec.value(rel.rhs):
            return rel
        for g in weighted:
            if rel.lhs.count(g) != rel.rhs.count(g):
                return rel
    return None


# ---------------------------------------------------------------------------
# Brute-force congruence oracle


def rewrite_neighbours(word: Word, p: Presentation):
    """All single-step rewrites of word, applying each relation both ways."""
    for rel in p.relations:
        for src, dst in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
            m = len(src)
            for i in range(len(word) - m + 1):
                if word[i : i + m] == src:
                    yield word[:i] + dst + word[i + m :]


def oracle_equivalent(
    p: Presentation, u: Word, v: Word, budget: SearchBudget
) -> Outcome[list[Word]]:
    """Decide u = v in the presented monoid by breadth-first closure from u.

    Definite carries the derivation chain u = w0, ..., wn = v where each
    step applies one relation as a two-way subword replacement.  A
    definite no is only reported when the whole reachable set under
    max_word_len was exhausted without truncation.
    """
    p.alphabet.check_word(u)
    p.alphabet.check_word(v)
    if u == v:
        return Outcome.yes([u])
    parents: dict[Word, Word | None] = {u: None}
    queue: deque[Word] = deque([u])
    steps = 0
    truncated: str | None = None
    while queue:
        if steps >= budget.max_steps:
            return Outcome.out_of_budget("max_steps")
        steps += 1
        current = queue.popleft()
        for nxt in rewrite_neighbours(current, p):
            if len(nxt) > budget.max_word_len:
                truncated = "max_word_len"
                continue
            if nxt in parents:
                continue
            parents[nxt] = current
            if nxt == v:
                chain: list[Word] = [nxt]
                back: Word | None = current
                while back is not None:
                    chain.append(back)
                    back = parents[back]
                chain.reverse()
                return Outcome.yes(chain)
            if len(queue) >= budget.max_frontier:
                truncated = "max_frontier"
                continue
            queue.append(nxt)
    if truncated:
        return Outcome.out_of_budget(truncated)
    return Outcome.no()


def derivation_is_valid(chain: list[Word], p: Presentation) -> bool:
    """Check that consecutive chain entries differ by one relation application."""
    for a, b in zip(chain, chain[1:]):
        if b not in set(rewrite_neighbours(a, p)):
            return False
    return True


# ---------------------------------------------------------------------------
# Direct products


def direct_product(p1: Presentation, p2: Presentation) -> Presentation:
    """Direct product: disjoint generators (p2 renamed on collision), all of
    p1's generators deglex-below all of p2's, relations R1 + R2 + the
    commutations s2*s1 = s1*s2."""
    taken = set(p1.alphabet.generators)
    renaming: dict[str, str] = {}
    for g in p2.alphabet.generators:
        name = g
        suffix = 2
        while name in taken:
            name = f"{g}{suffix}"
            suffix += 1
        renaming[g] = name
        taken.add(name)

    def rename(word: Word) -> Word:
        return tuple(renaming[g] for g in word)

    alphabet = Alphabet(p1.alphabet.generators + tuple(renaming[g] for g in p2.alphabet.generators))
    pairs: list[tuple[Word, Word]] = [r.as_pair() for r in p1.relations]
    pairs.extend((rename(r.lhs), rename(r.rhs)) for r in p2.relations)
    for s1 in p1.alphabet.generators:
        for g2 in p2.alphabet.generators:
            s2 = renaming[g2]
            pairs.append(((s2, s1), (s1, s2)))
    return Presentation.from_pairs(alphabet, pairs)


# ---------------------------------------------------------------------------
# Presentation file format


class PresentationParseError(ValueError):
    """Parse failure, carrying the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


_PAIRS_TERM_RE = re.compile(r"^(\d+)\s*\*\s*pairs\(\s*([^\s,()]+)\s*,\s*([^\s,()]+)\s*\)$")


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation text format.

    Lines: ``generators: g1 < g2 < ... < gn`` (later = deglex-greater),
    an optional ``pseudolength:`` declaration, then one ``lhs = rhs``
    relation per line.  ``#`` starts a comment.
    """
    alphabet: Alphabet | None = None
    spec: PseudolengthSpec | None = None
    pairs: list[tuple[Word, Word]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("generators:"):
            if alphabet is not None:
                raise PresentationParseError(line_no, "duplicate generators line")
            names = [tok.strip() for tok in line[len("generators:") :].split("<")]
            if any(not n or " " in n for n in names):
                raise PresentationParseError(line_no, "malformed generators line")
            try:
                alphabet = Alphabet(tuple(names))
            except WordError as exc:
                raise PresentationParseError(line_no, str(exc)) from None
            continue
        if line.startswith("pseudolength:"):
            if spec is not None:
                raise PresentationParseError(line_no, "duplicate pseudolength line")
            try:
                spec = _parse_pseudolength(line[len("pseudolength:") :].strip())
            except ValueError as exc:
                raise PresentationParseError(line_no, str(exc)) from None
            continue
        if alphabet is None:
            raise PresentationParseError(line_no, "generators line must come first")
        if "=" not in line:
            raise PresentationParseError(line_no, "expected '<word> = <word>'")
        left_text, _, right_text = line.partition("=")
        try:
            u = parse_word(left_text, alphabet)
            v = parse_word(right_text, alphabet)
            if not u or not v:
                raise WordError("relation sides must be nonempty")
            pairs.append((u, v))
        except WordError as exc:
            raise PresentationParseError(line_no, str(exc)) from None
    if alphabet is None:
        raise PresentationParseError(1, "missing generators line")
    return Presentation.from_pairs(alphabet, pairs, spec)


def _parse_pseudolength(text: str) -> PseudolengthSpec:
    terms = [t.strip() for t in text.split("+")]
    if not terms or terms[0] != "length":
        raise ValueError("pseudolength must start with 'length'")
    coeffs: dict[tuple[str, str], int] = {}
    for term in terms[1:]:
        m = _PAIRS_TERM_RE.match(term)
        if not m:
            raise ValueError(f"bad pseudolength term {term!r}")
        c, x, y = int(m.group(1)), m.group(2), m.group(3)
        coeffs[(x, y)] = coeffs.get((x, y), 0) + c
    return PseudolengthSpec.weighted(coeffs)


def format_presentation(p: Presentation) -> str:
    lines = ["generators: " + " < ".join(p.alphabet.generators)]
    if p.declared_pseudolength is not None:
        lines.append(f"pseudolength: {p.declared_pseudolength}")
    for rel in p.relations:
        lines.append(f"{format_word(rel.lhs)} = {format_word(rel.rhs)}")
    return "\n".join(lines) + "\n"


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as handle:
        return parse_presentation(handle.read())
