"""Alphabets, positive and signed words, and the deglex well-ordering.

A word is stored as a plain tuple of generator names, a signed word as a
tuple of (generator, sign) pairs with sign +1 or -1.  Tuples keep the
search engines fast and hashable; all higher-level structure (relations,
presentations, rewrite systems) is built on top of them.

The only built-in word order is deglex: words are compared by length
first, then letterwise by the position of each generator in the alphabet
declaration.  Deglex is admissible (compatible with concatenation on
both sides) and a well-order, which is what makes iterated reduction
terminate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

Word = tuple[str, ...]
SignedLetter = tuple[str, int]
SignedWord = tuple[SignedLetter, ...]

EMPTY: Word = ()
EMPTY_SIGNED: SignedWord = ()

# Generator tokens must survive the wire format: whitespace separates
# tokens, apostrophe marks inverses, ^ marks exponents, and = < # are
# structural in presentation files.
_TOKEN_RE = re.compile(r"[^\s'^=<#]+")


class WordError(ValueError):
    """Malformed word text or a letter outside the alphabet."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of generator names; later names are deglex-greater."""

    generators: tuple[str, ...]
    _rank: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise WordError("alphabet needs at least one generator")
        for g in gens:
            if not _TOKEN_RE.fullmatch(g):
                raise WordError(f"bad generator name {g!r}")
        if len(set(gens)) != len(gens):
            raise WordError(f"duplicate generator in {gens}")
        object.__setattr__(self, "_rank", {g: i for i, g in enumerate(gens)})

    def rank(self, generator: str) -> int:
        try:
            return self._rank[generator]
        except KeyError:
            raise WordError(f"unknown generator {generator!r}") from None

    def __contains__(self, generator: str) -> bool:
        return generator in self._rank

    def __len__(self) -> int:
        return len(self.generators)

    def check_word(self, word: Word) -> Word:
        for g in word:
            if g not in self._rank:
                raise WordError(f"unknown generator {g!r} in word")
        return word

    def check_signed(self, word: SignedWord) -> SignedWord:
        for g, sign in word:
            if g not in self._rank:
                raise WordError(f"unknown generator {g!r} in signed word")
            if sign not in (1, -1):
                raise WordError(f"bad sign {sign!r} on {g!r}")
        return word


@dataclass(frozen=True)
class DeglexOrder:
    """Degree-then-lexicographic order induced by an alphabet."""

    alphabet: Alphabet

    def key(self, word: Word):
        """Sort key; tuple comparison of keys realises the order."""
        return (len(word), tuple(self.alphabet.rank(g) for g in word))

    def compare(self, u: Word, v: Word) -> int:
        """Return -1, 0 or +1 for u < v, u = v, u > v."""
        ku, kv = self.key(u), self.key(v)
        if ku < kv:
            return -1
        if ku > kv:
            return 1
        return 0

    def less(self, u: Word, v: Word) -> bool:
        return self.key(u) < self.key(v)


def deglex_compare(u: Word, v: Word, order: DeglexOrder) -> int:
    """Compare two words in deglex; -1 for Less, 0 for Equal, +1 for Greater."""
    return order.compare(u, v)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse whitespace-separated tokens, each optionally suffixed ^k.

    ``^0`` contributes nothing; empty input is the empty word.
    """
    letters: list[str] = []
    for token in text.split():
        name, count = _split_exponent(token)
        if name.endswith("'"):
            raise WordError(f"inverse letter {token!r} not allowed in a positive word")
        if name not in alphabet:
            raise WordError(f"unknown generator {name!r}")
        letters.extend([name] * count)
    return tuple(letters)


def parse_signed_word(text: str, alphabet: Alphabet) -> SignedWord:
    """Parse signed-word text; a trailing apostrophe marks an inverse letter.

    ``x'^k`` expands to k copies of x^-1.
    """
    letters: list[SignedLetter] = []
    for token in text.split():
        name, count = _split_exponent(token)
        sign = 1
        if name.endswith("'"):
            name, sign = name[:-1], -1
        if not name:
            raise WordError(f"bad token {token!r}")
        if name not in alphabet:
            raise WordError(f"unknown generator {name!r}")
        letters.extend([(name, sign)] * count)
    return tuple(letters)


def _split_exponent(token: str) -> tuple[str, int]:
    if "^" in token:
        name, _, exp = token.partition("^")
        if not name or not exp or not exp.isdigit():
            raise WordError(f"malformed exponent in {token!r}")
        return name, int(exp)
    return token, 1


def format_word(word: Word) -> str:
    """Inverse of parse_word; runs of equal letters print as x^k."""
    return " ".join(f"{g}^{n}" if n > 1 else g for g, n in _runs(word))


def format_signed_word(word: SignedWord) -> str:
    parts = []
    for (g, sign), n in _runs(word):
        token = g if sign > 0 else g + "'"
        parts.append(f"{token}^{n}" if n > 1 else token)
    return " ".join(parts)


def _runs(seq):
    out: list[list] = []
    for item in seq:
        if out and out[-1][0] == item:
            out[-1][1] += 1
        else:
            out.append([item, 1])
    return [(item, n) for item, n in out]


def display_word(word: Word) -> str:
    """Human-facing form: like format_word but the empty word shows as 1."""
    return format_word(word) if word else "1"


def display_signed_word(word: SignedWord) -> str:
    return format_signed_word(word) if word else "1"


def mirror(word: Word) -> Word:
    """Reverse the letter sequence (realises left reversing, see reversing)."""
    return word[::-1]


def embed(word: Word) -> SignedWord:
    """A positive word as the all-positive signed word."""
    return tuple((g, 1) for g in word)


def inverse(word: Word) -> SignedWord:
    """The formal inverse: reversed order, all signs flipped."""
    return tuple((g, -1) for g in reversed(word))


def signed_concat(*parts: SignedWord) -> SignedWord:
    out: list[SignedLetter] = []
    for p in parts:
        out.extend(p)
    return tuple(out)


def find_occurrences(haystack: Word, needle: Word) -> list[int]:
    """All start indices of needle in haystack, ascending, overlaps included."""
    if not needle:
        raise WordError("empty needle")
    n, m = len(haystack), len(needle)
    return [i for i in range(n - m + 1) if haystack[i : i + m] == needle]


def find_first(haystack: Word, needle: Word) -> int:
    """Leftmost start index of needle in haystack, or -1."""
    if not needle:
        raise WordError("empty needle")
    n, m = len(haystack), len(needle)
    for i in range(n - m + 1):
        if haystack[i : i + m] == needle:
            return i
    return -1
