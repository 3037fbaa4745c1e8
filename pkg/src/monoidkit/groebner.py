"""Reduction, composition, interreduction, completion, and normal forms.

The engine works on oriented relations over a deglex order.  Reduction
replaces an occurrence of another relation's leading word by its smaller
side and re-orients; since deglex is a well-order this always terminates.
Composition pairs two relations whose leading words overlap as x*y and
y*z and produces the pair (x*rhs2, rhs1*z); a relation set is a reduced
Groebner basis exactly when it is interreduced and every composition
reduces to the trivial pair.

Completion repeatedly interreduces and adds the reduced composition of
the smallest unresolved overlap, where pairs of relations are ordered by
the deglex position of the concatenation of their leading words (ties:
shorter overlap, then insertion indices).  The procedure need not
terminate; budgets make every run finite and every truncation explicit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import (
    BUDGET_EXHAUSTED,
    DEFINITE,
    BudgetExceeded,
    Outcome,
    Presentation,
    Relation,
    SearchBudget,
    orient,
)
from .words import DeglexOrder, Word, display_word, find_first


@dataclass(frozen=True)
class RewriteSystem:
    """Oriented rules under one deglex order, in insertion order."""

    order: DeglexOrder
    rules: tuple[Relation, ...]
    interreduced: bool = False

    def __len__(self) -> int:
        return len(self.rules)


@dataclass(frozen=True)
class CompositionSite:
    """Leading words of left and right overlap as x*overlap and overlap*z."""

    left: Relation
    right: Relation
    overlap: Word

    def parts(self) -> tuple[Word, Word]:
        x = self.left.lhs[: len(self.left.lhs) - len(self.overlap)]
        z = self.right.lhs[len(self.overlap) :]
        return x, z


@dataclass(frozen=True)
class ReduceStep:
    """One reduction outcome; relation is None when the sides became equal."""

    changed: bool
    relation: Relation | None


def reduce_relation_once(target: Relation, by: Relation, order: DeglexOrder) -> ReduceStep:
    """Replace the leftmost occurrence of by.lhs inside target (lhs side
    searched first) with by.rhs and re-orient; no occurrence means no change."""
    for side in ("lhs", "rhs"):
        word: Word = getattr(target, side)
        pos = find_first(word, by.lhs)
        if pos < 0:
            continue
        rewritten = word[:pos] + by.rhs + word[pos + len(by.lhs) :]
        pair = (rewritten, target.rhs) if side == "lhs" else (target.lhs, rewritten)
        return ReduceStep(True, orient(pair[0], pair[1], order))
    return ReduceStep(False, target)


def reduces_to_zero(
    candidate: tuple[Word, Word], system: RewriteSystem, budget: SearchBudget
) -> Outcome[list[Relation]]:
    """Reduce a pair with the deterministic strategy (lowest-indexed rule,
    lhs side first, leftmost occurrence) until trivial or stuck.

    Definite carries the chain of intermediate oriented relations; a
    definite no carries the chain ending in the stuck pair.  Reduction
    terminates by well-ordering, so the step cap is safety only.
    """
    current = orient(candidate[0], candidate[1], system.order)
    chain: list[Relation] = []
    if current is None:
        return Outcome.yes(chain)
    chain.append(current)
    steps = 0
    while True:
        if steps >= budget.max_steps:
            return Outcome.out_of_budget("max_steps", chain)
        steps += 1
        for rule in system.rules:
            step = reduce_relation_once(current, rule, system.order)
            if step.changed:
                if step.relation is None:
                    return Outcome.yes(chain)
                current = step.relation
                chain.append(current)
                break
        else:
            return Outcome.no(chain)


def reduce_pair_fully(
    candidate: tuple[Word, Word], system: RewriteSystem, budget: SearchBudget
) -> Relation | None:
    """The stuck relation a pair reduces to, or None when it reduces to zero.

    Raises BudgetExceeded only on the max_steps safety cap.
    """
    outcome = reduces_to_zero(candidate, system, budget)
    if outcome.is_exhausted:
        raise BudgetExceeded("max_steps")
    if outcome.is_definite:
        return None
    assert outcome.value
    return outcome.value[-1]


def enumerate_compositions(r1: Relation, r2: Relation) -> list[CompositionSite]:
    """All sites where a suffix of r1.lhs equals a prefix of r2.lhs,
    shortest overlap first; the full-word overlap is included (it yields a
    trivial composition)."""
    sites = []
    max_k = min(len(r1.lhs), len(r2.lhs))
    for k in range(1, max_k + 1):
        if r1.lhs[len(r1.lhs) - k :] == r2.lhs[:k]:
            sites.append(CompositionSite(r1, r2, r1.lhs[len(r1.lhs) - k :]))
    return sites


def compose(site: CompositionSite) -> tuple[Word, Word]:
    """The un-oriented pair (x*rhs_right, rhs_left*z); both words rewrite
    the overlapped word x*overlap*z by one relation each."""
    x, z = site.parts()
    return (x + site.right.rhs, site.left.rhs + z)


def interreduce(system: RewriteSystem, budget: SearchBudget) -> RewriteSystem:
    """Reduce rules by each other to a fixpoint, dropping trivial ones.

    Deterministic: the first applicable (target index, reducer index) pair
    is applied, the rewritten rule keeps its slot, and the scan restarts.
    Terminates by well-ordering; raises BudgetExceeded on the safety cap.
    """
    rules = list(system.rules)
    steps = 0
    changed = True
    while changed:
        changed = False
        for i, target in enumerate(rules):
            for j, reducer in enumerate(rules):
                if i == j:
                    continue
                step = reduce_relation_once(target, reducer, system.order)
                if not step.changed:
                    continue
                if steps >= budget.max_steps:
                    raise BudgetExceeded("max_steps")
                steps += 1
                if step.relation is None:
                    del rules[i]
                elif step.relation in rules:
                    del rules[i]
                else:
                    rules[i] = step.relation
                changed = True
                break
            if changed:
                break
    return RewriteSystem(system.order, tuple(rules), interreduced=True)


@dataclass(frozen=True)
class GLogEntry:
    """One added relation, with the overlap that produced it."""

    relation: Relation
    left_index: int
    right_index: int
    overlap: Word

    def __str__(self) -> str:
        src = f"(from {self.left_index}∘{self.right_index} overlap {display_word(self.overlap)})"
        return f"+ {self.relation}  {src}"


@dataclass
class GCompletionResult:
    """Final or partial basis, the additions in order, and how the run ended."""

    status: str
    system: RewriteSystem
    log: list[GLogEntry] = field(default_factory=list)
    exhausted: str | None = None
    blocked_on: Relation | None = None

    @property
    def is_definite(self) -> bool:
        return self.status == DEFINITE


def _site_sort_key(order: DeglexOrder, rules: list[Relation]):
    def key(item: tuple[int, int, CompositionSite]):
        i, j, site = item
        return (order.key(rules[i].lhs + rules[j].lhs), len(site.overlap), i, j)

    return key


def _pending_sites(
    rules: list[Relation], order: DeglexOrder, resolved: set
) -> list[tuple[int, int, CompositionSite]]:
    out = []
    for i, r1 in enumerate(rules):
        for j, r2 in enumerate(rules):
            for site in enumerate_compositions(r1, r2):
                if (r1.as_pair(), r2.as_pair(), site.overlap) not in resolved:
                    out.append((i, j, site))
    out.sort(key=_site_sort_key(order, rules))
    return out


def g_complete(p: Presentation, budget: SearchBudget) -> GCompletionResult:
    """Run the completion loop until every composition reduces to zero or a
    budget dimension is hit.

    A composition that is already known to reduce to zero is never
    re-examined; the run stops, reporting the blocking relation, as soon
    as the smallest unresolved site produces a relation whose leading word
    exceeds max_word_len, or the relation count would exceed
    max_relations.
    """
    order = p.order
    system = interreduce(RewriteSystem(order, p.relations), budget)
    log: list[GLogEntry] = []
    resolved: set = set()
    loops = 0
    while True:
        if loops >= budget.max_steps:
            return GCompletionResult(BUDGET_EXHAUSTED, system, log, "max_steps")
        loops += 1
        rules = list(system.rules)
        pending = _pending_sites(rules, order, resolved)
        if not pending:
            return GCompletionResult(DEFINITE, system, log)
        for i, j, site in pending:
            stuck = reduce_pair_fully(compose(site), system, budget)
            if stuck is None:
                resolved.add((site.left.as_pair(), site.right.as_pair(), site.overlap))
                continue
            if len(stuck.lhs) > budget.max_word_len:
                return GCompletionResult(
                    BUDGET_EXHAUSTED, system, log, "max_word_len", blocked_on=stuck
                )
            if len(rules) + 1 > budget.max_relations:
                return GCompletionResult(
                    BUDGET_EXHAUSTED, system, log, "max_relations", blocked_on=stuck
                )
            log.append(GLogEntry(stuck, i, j, site.overlap))
            resolved.add((site.left.as_pair(), site.right.as_pair(), site.overlap))
            system = interreduce(
                RewriteSystem(order, tuple(rules) + (stuck,)), budget
            )
            break


def is_reduced_groebner(p: Presentation, budget: SearchBudget) -> Outcome[bool]:
    """True iff the relation set is its own interreduction (as a set) and
    every composition of two relations reduces to zero."""
    system = RewriteSystem(p.order, p.relations)
    try:
        reduced = interreduce(system, budget)
    except BudgetExceeded as exc:
        return Outcome.out_of_budget(exc.dimension)
    if set(reduced.rules) != set(system.rules):
        return Outcome.yes(False)
    for r1 in system.rules:
        for r2 in system.rules:
            for site in enumerate_compositions(r1, r2):
                outcome = reduces_to_zero(compose(site), reduced, budget)
                if outcome.is_exhausted:
                    return Outcome.out_of_budget(outcome.exhausted or "max_steps")
                if outcome.is_definite_no:
                    return Outcome.yes(False)
    return Outcome.yes(True)


def g_reduce_word(word: Word, system: RewriteSystem) -> Word:
    """Exhaustive rewriting: replace the leftmost occurrence of the
    lowest-indexed applicable rule's leading word until no rule applies.

    The result is a canonical normal form when the system is a Groebner
    basis; otherwise it is merely some descendant of the word.
    """
    current = word
    while True:
        for rule in system.rules:
            pos = find_first(current, rule.lhs)
            if pos >= 0:
                current = current[:pos] + rule.rhs + current[pos + len(rule.lhs) :]
                break
        else:
            return current


def g_equivalent(u: Word, v: Word, system: RewriteSystem) -> bool:
    """Equality of normal forms; decides the word problem when the system
    passes is_reduced_groebner (the caller's responsibility)."""
    return g_reduce_word(u, system) == g_reduce_word(v, system)


def system_from_presentation(p: Presentation, interreduced: bool = False) -> RewriteSystem:
    return RewriteSystem(p.order, p.relations, interreduced)
