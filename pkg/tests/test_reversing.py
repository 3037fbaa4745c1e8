from __future__ import annotations

import random

import pytest

from monoidkit.presentation import (
    Presentation,
    PseudolengthSpec,
    Relation,
    SearchBudget,
    oracle_equivalent,
)
from monoidkit.reversing import (
    CertificateError,
    apply_step,
    left_r_complete,
    left_reverse_to_empty,
    r_complete,
    r_completeness_check,
    reverse_to_empty,
    reversing_successors,
    split_terminal,
    terminal_forms,
)
from monoidkit.words import (
    Alphabet,
    embed,
    inverse,
    parse_signed_word,
    parse_word,
)

PLAIN = PseudolengthSpec.plain()


def words(p, *texts):
    return [parse_word(t, p.alphabet) for t in texts]


def test_successors_braid(load):
    p = load("braid-b3.txt")
    start = parse_signed_word("a' b b", p.alphabet)
    succs = reversing_successors(start, p)
    produced = [word for _, word in succs]
    assert parse_signed_word("b a b' a' b", p.alphabet) in produced
    # The first successor realises the replacement at the leftmost boundary.
    assert produced[0] == parse_signed_word("b a b' a' b", p.alphabet)


def test_successors_deletion_and_replacement(load):
    p = load("bab-ba2.txt")
    start = parse_signed_word("b' b", p.alphabet)
    produced = [word for _, word in reversing_successors(start, p)]
    assert () in produced
    assert parse_signed_word("a b a' a'", p.alphabet) in produced
    assert parse_signed_word("a a b' a'", p.alphabet) in produced

    positive = embed(parse_word("b a b", p.alphabet))
    assert reversing_successors(positive, p) == []


def test_steps_replay(load):
    p = load("braid-b3.txt")
    start = parse_signed_word("a' b b", p.alphabet)
    current = start
    for step, result in reversing_successors(current, p):
        assert apply_step(current, step) == result


def test_reverse_to_empty(load):
    p = load("bab-ba2.txt")
    budget = SearchBudget()
    u, v = words(p, "b a^2", "b a b")
    yes = reverse_to_empty(u, v, p, budget)
    assert yes.is_definite
    trace = yes.value
    current = trace.start
    assert current == inverse(u) + embed(v)
    for step, result in trace.steps:
        assert apply_step(current, step) == result
        current = result
    assert current == ()

    no = reverse_to_empty(*words(p, "b a^4", "b a^3 b"), p, budget)
    assert no.is_definite_no

    same = reverse_to_empty(*words(p, "b a b a", "b a b a"), p, budget)
    assert same.is_definite


def test_reverse_to_empty_after_completion(load):
    base = load("bab-ba2.txt")
    p = base.add_pair(
        parse_word("b a^3 b", base.alphabet), parse_word("b a^4", base.alphabet)
    )
    out = reverse_to_empty(*words(p, "b a^4", "b a^3 b"), p, SearchBudget())
    assert out.is_definite


def test_deletion_only_reversing():
    alphabet = Alphabet(("a", "b", "c"))
    p = Presentation(alphabet, ())
    rng = random.Random(23)
    for _ in range(50):
        word = tuple(rng.choice(alphabet.generators) for _ in range(rng.randrange(1, 7)))
        out = reverse_to_empty(word, word, p, SearchBudget())
        assert out.is_definite
        assert len(out.value.steps) <= len(word)


def test_terminal_forms(load):
    p = load("bab-ba2.txt")
    start = parse_signed_word("b' b b' b", p.alphabet)
    out = terminal_forms(start, p, SearchBudget())
    assert out.is_definite
    forms = {(f.u, f.v) for f in out.value.conforming}
    a = p.alphabet
    assert (parse_word("a^4", a), parse_word("a^3 b", a)) in forms
    assert (parse_word("a^2", a), parse_word("a b", a)) in forms
    assert (parse_word("a^3 b", a), parse_word("a^4", a)) in forms
    assert (parse_word("a b", a), parse_word("a^2", a)) in forms
    # Branches mixing the two relation readings get stuck on an a^-1 b
    # boundary; they are reported but kept apart from the u v^-1 shapes.
    assert parse_signed_word("a b a' b a'^2", p.alphabet) in out.value.stuck


def test_terminal_forms_stuck(load):
    p = load("ba-b.txt")
    start = parse_signed_word("a' b", p.alphabet)
    out = terminal_forms(start, p, SearchBudget())
    assert out.is_definite
    assert out.value.conforming == []
    assert out.value.stuck == [start]

    empty = terminal_forms((), p, SearchBudget())
    assert [(f.u, f.v) for f in empty.value.conforming] == [((), ())]


def test_split_terminal():
    a = Alphabet(("a", "b"))
    square = split_terminal(parse_signed_word("a b b' a'", a))
    assert square.u == ("a", "b") and square.v == ("a", "b")
    form = split_terminal(parse_signed_word("a a b'", a))
    assert form.u == ("a", "a") and form.v == ("b",)
    assert split_terminal(parse_signed_word("a' b", a)) is None
    both_empty = split_terminal(())
    assert both_empty.u == () and both_empty.v == ()


def test_completeness_check(load):
    p = load("bab-ba2.txt")
    out = r_completeness_check(p, PLAIN, SearchBudget())
    verdict = out.value
    assert out.is_definite and not verdict.complete
    assert verdict.witness == (
        parse_word("b a^4", p.alphabet),
        parse_word("b a^3 b", p.alphabet),
    )

    braid = load("braid-b3.txt")
    out = r_completeness_check(braid, PLAIN, SearchBudget())
    assert out.is_definite and out.value.complete


def test_completeness_check_certificate_gate(load):
    p = load("ba-b.txt")
    with pytest.raises(CertificateError):
        r_completeness_check(p, PLAIN, SearchBudget())
    # Bypassed, the criterion still runs and finds the obstruction.
    out = r_completeness_check(p, PLAIN, SearchBudget(), certified=False)
    assert out.is_definite and not out.value.complete


def test_completed_heisenberg_is_complete(load):
    heis = load("heisenberg.txt")
    completed = heis.add_pair(
        parse_word("c b a", heis.alphabet), parse_word("a b", heis.alphabet)
    )
    out = r_completeness_check(completed, heis.declared_pseudolength, SearchBudget())
    assert out.is_definite and out.value.complete


def test_r_complete_family(load):
    p = load("bab-ba2.txt")
    result = r_complete(p, PLAIN, SearchBudget(max_word_len=13))
    assert result.status == "budget-exhausted" and result.exhausted == "max_word_len"
    added = [e.relation for e in result.log]
    a = p.alphabet
    assert added == [
        Relation(parse_word(f"b a^{2 * n - 1} b", a), parse_word(f"b a^{2 * n}", a))
        for n in range(2, 7)
    ]
    # Every added relation preserves the certified functional.
    for entry in result.log:
        assert PLAIN.value(entry.su) == PLAIN.value(entry.tv)


def test_r_complete_heisenberg(load):
    heis = load("heisenberg.txt")
    result = r_complete(heis, heis.declared_pseudolength, SearchBudget())
    assert result.is_definite
    assert [e.relation for e in result.log] == [
        Relation(parse_word("c b a", heis.alphabet), parse_word("a b", heis.alphabet))
    ]


def test_r_complete_already_complete(load):
    braid = load("braid-b3.txt")
    result = r_complete(braid, PLAIN, SearchBudget())
    assert result.is_definite and not result.log


def test_r_complete_type2(load):
    p = load("ba-b.txt")
    result = r_complete(p, PLAIN, SearchBudget(max_relations=8), certified=False)
    assert result.exhausted == "max_relations"
    a = p.alphabet
    assert [e.relation for e in result.log] == [
        Relation(parse_word(f"b a^{n}", a), parse_word("b", a)) for n in range(2, 9)
    ]


def test_r_complete_cascade_family(load):
    p = load("cascade-abcd.txt")
    result = r_complete(
        p, PLAIN, SearchBudget(max_relations=8, max_steps=20000), certified=False
    )
    assert result.exhausted == "max_relations"
    a = p.alphabet
    added = [(e.su, e.tv) if e.su[0] == "b" else (e.tv, e.su) for e in result.log]
    for n, (bu, dv) in enumerate(added):
        assert bu == ("b",) + ("a", "c") * n + ("c",)
        assert dv == ("d",) + ("a",) * n + ("c", "b")
    # Soundness of each addition against the oracle.
    for entry in result.log:
        confirm = oracle_equivalent(
            p, entry.su, entry.tv, SearchBudget(max_word_len=len(entry.su) + 3)
        )
        assert confirm.is_definite


def test_nontermination_guard(load):
    p = load("ba-a2b.txt")
    out = reverse_to_empty(*words(p, "a b", "b a"), p, SearchBudget(max_steps=2000))
    assert out.is_exhausted
    out = reverse_to_empty(*words(p, "b", "a b"), p, SearchBudget(max_steps=2000))
    assert out.is_exhausted


def test_left_reversing(load):
    commuting = Presentation.from_pairs(
        Alphabet(("a", "b")),
        [(("b", "a"), ("a", "b"))],
    )
    u, v = ("a", "b"), ("b", "a")
    right = reverse_to_empty(u, v, commuting, SearchBudget())
    left = left_reverse_to_empty(u, v, commuting, SearchBudget())
    assert right.status == left.status == "definite"

    same = left_reverse_to_empty(("a", "b"), ("a", "b"), commuting, SearchBudget())
    assert same.is_definite


def test_left_complete_mirrors_right(load):
    # Left-completing the mirror image of the absorbing presentation must
    # produce the mirror image of its right completion.
    right_p = load("ba-b.txt")
    left_p = Presentation.from_pairs(right_p.alphabet, [(("a", "b"), ("b",))])
    budget = SearchBudget(max_relations=5)
    rightward = r_complete(right_p, PLAIN, budget, certified=False)
    leftward = left_r_complete(left_p, PLAIN, budget, certified=False)
    a = right_p.alphabet
    assert [e.relation for e in rightward.log] == [
        Relation(parse_word(f"b a^{n}", a), parse_word("b", a)) for n in range(2, 6)
    ]
    assert [e.relation for e in leftward.log] == [
        Relation(parse_word(f"a^{n} b", a), parse_word("b", a)) for n in range(2, 6)
    ]


def test_left_reverse_on_cascade(load):
    p = load("cascade-abcd.txt")
    out = left_reverse_to_empty(
        parse_word("d a", p.alphabet), parse_word("a d", p.alphabet), p, SearchBudget()
    )
    assert out.is_definite


def test_determinism(load):
    p = load("bab-ba2.txt")
    runs = [r_complete(p, PLAIN, SearchBudget(max_word_len=9)) for _ in range(2)]
    assert [e.relation for e in runs[0].log] == [e.relation for e in runs[1].log]

    start = parse_signed_word("b' b b' b", p.alphabet)
    enums = [terminal_forms(start, p, SearchBudget()).value.conforming for _ in range(2)]
    assert [(f.u, f.v) for f in enums[0]] == [(f.u, f.v) for f in enums[1]]


def test_reversing_soundness_sample():
    # Small-scale version of the randomized soundness gate: any definite
    # reversing success must be confirmed by the oracle.
    rng = random.Random(99)
    confirmed = 0
    for _ in range(60):
        size = rng.choice((2, 3))
        alphabet = Alphabet(tuple("abc"[:size]))
        pairs = []
        for _ in range(rng.choice((1, 2))):
            length = rng.randrange(1, 5)
            lhs = tuple(rng.choice(alphabet.generators) for _ in range(length))
            rhs = tuple(rng.choice(alphabet.generators) for _ in range(length))
            if lhs != rhs:
                pairs.append((lhs, rhs))
        p = Presentation.from_pairs(alphabet, pairs)
        if not p.relations:
            continue
        u = tuple(rng.choice(alphabet.generators) for _ in range(rng.randrange(1, 5)))
        v = tuple(rng.choice(alphabet.generators) for _ in range(len(u)))
        out = reverse_to_empty(u, v, p, SearchBudget(max_steps=300, max_frontier=500))
        if out.is_definite:
            confirmed += 1
            oracle = oracle_equivalent(p, u, v, SearchBudget(max_word_len=len(u)))
            assert oracle.is_definite
    assert confirmed > 0
