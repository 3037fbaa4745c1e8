from __future__ import annotations

import random

import pytest

from monoidkit.presentation import (
    PresentationParseError,
    PseudolengthSpec,
    Relation,
    SearchBudget,
    check_pseudolength,
    derivation_is_valid,
    direct_product,
    format_presentation,
    mirror_presentation,
    oracle_equivalent,
    orient,
    parse_presentation,
)
from monoidkit.words import Alphabet, DeglexOrder, WordError, parse_word

AB = Alphabet(("a", "b"))
ORDER = DeglexOrder(AB)


def w(text: str, alphabet: Alphabet = AB):
    return parse_word(text, alphabet)


def test_orient():
    rel = orient(w("b a^2"), w("b a b"), ORDER)
    assert rel == Relation(w("b a b"), w("b a^2"))
    assert orient(w("a b"), w("a b"), ORDER) is None
    assert orient(w("a b"), w("b a"), ORDER) == Relation(w("b a"), w("a b"))
    with pytest.raises(WordError):
        orient((), w("a"), ORDER)
    # Deterministic and stable on its own output.
    again = orient(rel.lhs, rel.rhs, ORDER)
    assert again == rel


def test_pseudolength_values():
    spec = PseudolengthSpec.weighted({("a", "b"): 2, ("b", "a"): 1})
    abcd = Alphabet(("a", "b", "c", "d"))
    assert spec.value(w("a b", abcd)) == 4
    assert spec.value(w("b a c", abcd)) == 4
    assert spec.value(w("b c", abcd)) == 2
    assert spec.value(w("c b d", abcd)) == 3
    assert spec.value(()) == 0


def test_check_pseudolength(load):
    assert check_pseudolength(load("bab-ba2.txt"), PseudolengthSpec.plain()) is None
    failing = check_pseudolength(load("ba-b.txt"), PseudolengthSpec.plain())
    assert failing == Relation(w("b a"), w("b"))
    cascade = load("cascade-abcd.txt")
    witness = check_pseudolength(cascade, cascade.declared_pseudolength)
    assert witness is not None
    assert {witness.lhs, witness.rhs} == {
        w("b c", cascade.alphabet),
        w("c b d", cascade.alphabet),
    }
    heis = load("heisenberg.txt")
    assert check_pseudolength(heis, heis.declared_pseudolength) is None


def test_pseudolength_prefix_growth():
    # lam(su) > lam(u) for every letter s: the length term strictly grows
    # and pair terms cannot shrink.
    spec = PseudolengthSpec.weighted({("a", "b"): 2, ("b", "a"): 1})
    rng = random.Random(5)
    for _ in range(200):
        u = tuple(rng.choice(AB.generators) for _ in range(rng.randrange(6)))
        for s in AB.generators:
            assert spec.value((s,) + u) > spec.value(u)


def test_oracle_examples(load):
    braid = load("braid-b3.txt")
    budget = SearchBudget(max_word_len=6)
    res = oracle_equivalent(braid, w("b a b"), w("a b a"), budget)
    assert res.is_definite
    assert derivation_is_valid(res.value, braid)

    same = oracle_equivalent(braid, w("a b"), w("a b"), budget)
    assert same.is_definite and same.value == [w("a b")]

    grows = load("abababa-bb.txt")
    res = oracle_equivalent(grows, w("b^3 a"), w("a b^3"), SearchBudget(max_word_len=9))
    assert res.is_definite
    assert derivation_is_valid(res.value, grows)

    apart = oracle_equivalent(load("bab-ba2.txt"), w("a b"), w("a^2"), budget)
    assert apart.is_definite_no


def test_oracle_symmetry(load):
    p = load("bab-ba2.txt")
    budget = SearchBudget(max_word_len=7)
    pairs = [(w("b a b"), w("b a^2")), (w("a b a b"), w("a b a^2")), (w("b a"), w("a b"))]
    for u, v in pairs:
        assert oracle_equivalent(p, u, v, budget).status == oracle_equivalent(
            p, v, u, budget
        ).status


def test_oracle_definite_on_homogeneous(load):
    # Plain-length homogeneity bounds every equivalence class, so the
    # length axis never truncates when the cap equals the word length.
    p = load("braid-b3.txt")
    rng = random.Random(13)
    for _ in range(50):
        u = tuple(rng.choice("ab") for _ in range(rng.randrange(1, 6)))
        v = tuple(rng.choice("ab") for _ in range(len(u)))
        res = oracle_equivalent(p, u, v, SearchBudget(max_word_len=len(u)))
        assert not res.is_exhausted


def test_direct_product_counts():
    p1 = parse_presentation("generators: a\n")
    p2 = parse_presentation("generators: b\n")
    prod = direct_product(p1, p2)
    assert [r.as_pair() for r in prod.relations] == [(("b", "a"), ("a", "b"))]

    left = parse_presentation("generators: a < b\nb a = a b\n")
    right = parse_presentation("generators: x < y < z\ny x = x y\nz x = x z\n")
    prod = direct_product(left, right)
    assert len(prod.relations) == 1 + 2 + 6
    # Every left generator sits deglex-below every right generator.
    ranks = {g: prod.alphabet.rank(g) for g in prod.alphabet.generators}
    assert max(ranks["a"], ranks["b"]) < min(ranks["x"], ranks["y"], ranks["z"])


def test_direct_product_renames_collisions():
    p = parse_presentation("generators: a < b\nb a = a b\n")
    prod = direct_product(p, p)
    assert prod.alphabet.generators == ("a", "b", "a2", "b2")
    assert len(prod.relations) == 1 + 1 + 4


def test_direct_product_roundtrip():
    p1 = parse_presentation("generators: a < b\nb a = a b\n")
    p2 = parse_presentation("generators: c\n")
    prod = direct_product(p1, p2)
    assert parse_presentation(format_presentation(prod)) == prod


def test_presentation_dedup_and_trivial():
    text = "generators: a < b\nb a = a b\na b = b a\na b = a b\n"
    p = parse_presentation(text)
    assert len(p.relations) == 1


def test_parse_errors_carry_line_numbers():
    with pytest.raises(PresentationParseError) as err:
        parse_presentation("generators: a < b\nb a = \n")
    assert err.value.line_no == 2
    with pytest.raises(PresentationParseError) as err:
        parse_presentation("b a = a b\n")
    assert err.value.line_no == 1
    with pytest.raises(PresentationParseError) as err:
        parse_presentation("generators: a < b\n# fine\nz = a\n")
    assert err.value.line_no == 3


def test_format_parse_roundtrip(load):
    for name in ("bab-ba2.txt", "heisenberg.txt", "cascade-abcd.txt", "fork-6gen.txt"):
        p = load(name)
        assert parse_presentation(format_presentation(p)) == p


def test_mirror_presentation_involution(load):
    p = load("braid-b4.txt")
    assert mirror_presentation(mirror_presentation(p)) == p


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_steps=0)
