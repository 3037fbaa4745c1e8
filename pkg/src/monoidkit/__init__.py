"""Completion procedures and word-problem solvers for presented monoids.

Two completion engines over the same presentations: Groebner-style
completion of oriented string relations (module groebner) and signed-word
reversing completion (module reversing), together with homogeneity
certificates, cancellativity tests, a brute-force congruence oracle, and
reversing-diagram export.
"""

from .presentation import (
    Outcome,
    Presentation,
    PseudolengthSpec,
    Relation,
    SearchBudget,
    check_pseudolength,
    direct_product,
    format_presentation,
    load_presentation,
    oracle_equivalent,
    orient,
    parse_presentation,
)
from .words import (
    Alphabet,
    DeglexOrder,
    SignedWord,
    Word,
    deglex_compare,
    find_occurrences,
    format_signed_word,
    format_word,
    mirror,
    parse_signed_word,
    parse_word,
)

__all__ = [
    "Alphabet",
    "DeglexOrder",
    "Outcome",
    "Presentation",
    "PseudolengthSpec",
    "Relation",
    "SearchBudget",
    "SignedWord",
    "Word",
    "check_pseudolength",
    "deglex_compare",
    "direct_product",
    "find_occurrences",
    "format_presentation",
    "format_signed_word",
    "format_word",
    "load_presentation",
    "mirror",
    "oracle_equivalent",
    "orient",
    "parse_presentation",
    "parse_signed_word",
    "parse_word",
]
