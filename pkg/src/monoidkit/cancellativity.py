"""Cancellativity tests: the reversing criterion, the structural
obstruction on reduced complete bases, and a normal-form witness search.

For an R-complete presentation, the monoid is left cancellative exactly
when u^-1 v reverses to empty for every relation s*u = s*v whose sides
share their first letter.  On budget-truncated completions the relation
scan still runs, but the verdict is only as strong as the completeness
outcome, which is therefore reported alongside it.

For a reduced Groebner basis the presence of a relation s*u = s*v with
u, v nonempty refutes left cancellativity outright; its absence decides
nothing, which is why the negative answer is called "no obstruction".
The witness search closes that gap on small instances: it hunts for a
generator s and distinct normal forms u, v with s*u and s*v equal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import RewriteSystem, g_reduce_word, is_reduced_groebner
from .presentation import (
    BUDGET_EXHAUSTED,
    DEFINITE,
    DEFINITE_NO,
    Presentation,
    PseudolengthSpec,
    Relation,
    SearchBudget,
    mirror_presentation,
)
from .reversing import r_completeness_check, reverse_to_empty
from .words import Word, mirror

CANCELLATIVE = "cancellative"
NOT_CANCELLATIVE = "not-cancellative"


class NotReducedGroebnerError(ValueError):
    """The operation needs a reduced Groebner basis and did not get one."""


@dataclass
class CancellativityReport:
    """Verdict plus the completeness status that scopes its strength."""

    side: str  # "left" | "right"
    verdict: str  # cancellative | not-cancellative | budget-exhausted
    witness: Relation | None = None
    completeness: str = ""  # complete | incomplete | budget-exhausted | skipped
    exhausted: str | None = None

    @property
    def is_definite(self) -> bool:
        return self.verdict != BUDGET_EXHAUSTED


def shared_prefix_relations(p: Presentation) -> list[Relation]:
    """Relations whose two sides start with the same generator."""
    return [r for r in p.relations if r.lhs[0] == r.rhs[0]]


def left_cancellative_by_reversing(
    p: Presentation,
    spec: PseudolengthSpec,
    budget: SearchBudget,
    certified: bool = True,
) -> CancellativityReport:
    """Reversing criterion for left cancellation.

    Every relation s*u = s*v must have u^-1 v reversible to empty.  The
    completeness check runs first and its outcome is recorded; the
    relation scan is performed regardless, so budget-truncated completions
    still yield a verdict, qualified by the completeness field.
    """
    checked = r_completeness_check(p, spec, budget, certified)
    if checked.is_exhausted:
        completeness = BUDGET_EXHAUSTED
    else:
        assert checked.value is not None
        completeness = "complete" if checked.value.complete else "incomplete"
    exhausted: str | None = None
    for rel in shared_prefix_relations(p):
        outcome = reverse_to_empty(rel.lhs[1:], rel.rhs[1:], p, budget)
        if outcome.is_definite_no:
            return CancellativityReport("left", NOT_CANCELLATIVE, rel, completeness)
        if outcome.is_exhausted:
            exhausted = exhausted or outcome.exhausted
    if exhausted:
        return CancellativityReport("left", BUDGET_EXHAUSTED, None, completeness, exhausted)
    return CancellativityReport("left", CANCELLATIVE, None, completeness)


def right_cancellative_by_left_reversing(
    p: Presentation,
    spec: PseudolengthSpec,
    budget: SearchBudget,
    certified: bool = True,
) -> CancellativityReport:
    """Mirror image: left R-completeness of the mirrored presentation
    decides right cancellativity of the original."""
    report = left_cancellative_by_reversing(
        mirror_presentation(p), spec.mirrored(), budget, certified
    )
    witness = None
    if report.witness is not None:
        witness = Relation(mirror(report.witness.lhs), mirror(report.witness.rhs))
    return CancellativityReport(
        "right", report.verdict, witness, report.completeness, report.exhausted
    )


def gcomplete_obstruction(p: Presentation, budget: SearchBudget) -> Relation | None:
    """On a reduced Groebner basis, a relation s*u = s*v with u, v nonempty
    refutes left cancellativity; returns it, or None for no obstruction.

    No obstruction does not imply cancellativity.  Raises
    NotReducedGroebnerError when the basis check fails or is inconclusive.
    """
    verdict = is_reduced_groebner(p, budget)
    if not verdict.is_definite or not verdict.value:
        raise NotReducedGroebnerError("input is not a verified reduced Groebner basis")
    for rel in shared_prefix_relations(p):
        if len(rel.lhs) >= 2 and len(rel.rhs) >= 2:
            return rel
    return None


def _words_up_to(p: Presentation, max_len: int) -> list[Word]:
    """All words of length <= max_len in deglex order."""
    out: list[Word] = [()]
    layer: list[Word] = [()]
    for _ in range(max_len):
        layer = [w + (g,) for w in layer for g in p.alphabet.generators]
        layer.sort(key=p.order.key)
        out.extend(layer)
    return out


def witness_search(
    p: Presentation, basis: RewriteSystem, max_len: int
) -> tuple[str, Word, Word] | None:
    """Search for s and words u < v (deglex, both of length <= max_len)
    whose normal forms differ while s*u and s*v reduce equally; returns the
    smallest witness by (generator rank, u, v), or None.

    The basis must be a reduced Groebner basis, otherwise normal forms are
    not canonical and the search would be meaningless.
    """
    verdict = is_reduced_groebner(
        Presentation(p.alphabet, basis.rules), SearchBudget()
    )
    if not verdict.is_definite or not verdict.value:
        raise NotReducedGroebnerError("witness search needs a reduced Groebner basis")
    words = _words_up_to(p, max_len)
    normal = {w: g_reduce_word(w, basis) for w in words}
    for s in p.alphabet.generators:
        buckets: dict[Word, list[Word]] = {}
        for w in words:
            buckets.setdefault(g_reduce_word((s,) + w, basis), []).append(w)
        for u in words:
            for v in buckets[g_reduce_word((s,) + u, basis)]:
                if p.order.less(u, v) and normal[u] != normal[v]:
                    return (s, u, v)
    return None


def oracle_agrees_with_witness(
    p: Presentation, witness: tuple[str, Word, Word], budget: SearchBudget
) -> bool:
    """Confirm a witness against the brute-force oracle: s*u = s*v holds
    and u = v does not (within budget)."""
    from .presentation import oracle_equivalent

    s, u, v = witness
    same = oracle_equivalent(p, (s,) + u, (s,) + v, budget)
    diff = oracle_equivalent(p, u, v, budget)
    return same.status == DEFINITE and diff.status == DEFINITE_NO
