"""Signed-word reversing, completeness checking, and reversing completion.

Reversing rewrites signed words at negative-positive boundaries: a factor
u^-1 u is deleted, and a factor u^-1 v is replaced by v' u'^-1 whenever
u v' = v u' matches a relation read as an unordered pair (u, v nonempty;
u', v' may be empty).  Reaching the empty word from u^-1 v proves u = v
in the monoid; the converse holds exactly for R-complete presentations.

The completeness criterion applies to homogeneous presentations: for each
generator triple (s, t, r), every reversing of s^-1 r r^-1 t to a word of
the shape u v^-1 must itself satisfy (s u)^-1 (t v) reversing to empty.
Completion adds the first failing pair s u = t v as a new relation and
repeats.  Reversing is nondeterministic and may diverge, so every search
here is breadth-first with a visited set and explicit step/frontier caps;
verdicts are three-valued and never overclaim.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .presentation import (
    BUDGET_EXHAUSTED,
    DEFINITE,
    Outcome,
    Presentation,
    PseudolengthSpec,
    Relation,
    SearchBudget,
    check_pseudolength,
    mirror_presentation,
    orient,
)
from .words import (
    SignedWord,
    Word,
    display_word,
    embed,
    inverse,
    mirror,
)


class CertificateError(ValueError):
    """The homogeneity gate failed: the declared functional is not a
    pseudolength for this presentation."""

    def __init__(self, witness: Relation | None):
        detail = f" (fails on {witness})" if witness else ""
        super().__init__(f"no valid pseudolength certificate{detail}")
        self.witness = witness


@dataclass(frozen=True)
class ReversingStep:
    """One rewrite: the factor u^-1 v starting at position becomes
    v' u'^-1.  Deletions are the relation-free case u = v, u' = v' = empty."""

    position: int
    kind: str  # "delete" | "replace"
    u: Word
    v: Word
    v_prime: Word = ()
    u_prime: Word = ()
    relation: Relation | None = None

    def fragment(self) -> SignedWord:
        return embed(self.v_prime) + inverse(self.u_prime)

    def span(self) -> int:
        return len(self.u) + len(self.v)


def apply_step(word: SignedWord, step: ReversingStep) -> SignedWord:
    """Replay a step; used to validate traces."""
    end = step.position + step.span()
    return word[: step.position] + step.fragment() + word[end:]


@dataclass(frozen=True)
class ReversingTrace:
    start: SignedWord
    steps: tuple[tuple[ReversingStep, SignedWord], ...]

    @property
    def final(self) -> SignedWord:
        return self.steps[-1][1] if self.steps else self.start


@dataclass(frozen=True)
class TerminalForm:
    """A terminal word of the shape u v^-1 (no boundary left anywhere)."""

    u: Word
    v: Word

    def __str__(self) -> str:
        return f"{display_word(self.u)} · ({display_word(self.v)})⁻¹"


def reversing_successors(
    word: SignedWord, p: Presentation
) -> list[tuple[ReversingStep, SignedWord]]:
    """All one-step reversings, deterministically ordered: boundary
    ascending; deletions by factor length; then relation index, decomposition
    lengths, and side assignment (stored orientation first)."""
    out: list[tuple[ReversingStep, SignedWord]] = []
    n = len(word)
    # A replaced u must be a prefix of some relation side, so its length is
    # bounded by the longest side.
    max_side = max((max(len(r.lhs), len(r.rhs)) for r in p.relations), default=0)
    for i in range(n - 1):
        if word[i][1] != -1 or word[i + 1][1] != 1:
            continue
        neg_run = 0
        while i - neg_run >= 0 and word[i - neg_run][1] == -1:
            neg_run += 1
        pos_run = 0
        while i + 1 + pos_run < n and word[i + 1 + pos_run][1] == 1:
            pos_run += 1

        def u_of(lu: int) -> Word:
            return tuple(word[i - k][0] for k in range(lu))

        def v_of(lv: int) -> Word:
            return tuple(word[i + 1 + k][0] for k in range(lv))

        for l in range(1, min(neg_run, pos_run) + 1):
            u = u_of(l)
            if u == v_of(l):
                step = ReversingStep(i - l + 1, "delete", u, u)
                out.append((step, apply_step(word, step)))
        for rel in p.relations:
            for lu in range(1, min(neg_run, max_side) + 1):
                u = u_of(lu)
                for lv in range(1, min(pos_run, max_side) + 1):
                    v = v_of(lv)
                    for u_side, v_side in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
                        if u_side[:lu] != u or v_side[:lv] != v:
                            continue
                        step = ReversingStep(
                            i - lu + 1,
                            "replace",
                            u,
                            v,
                            v_prime=u_side[lu:],
                            u_prime=v_side[lv:],
                            relation=rel,
                        )
                        out.append((step, apply_step(word, step)))
    return out


def split_terminal(word: SignedWord) -> TerminalForm | None:
    """The (u, v) of a word of shape u v^-1, or None if a negative letter
    precedes a positive one somewhere."""
    seen_negative = False
    split = len(word)
    for k, (_, sign) in enumerate(word):
        if sign == -1 and not seen_negative:
            seen_negative = True
            split = k
        elif sign == 1 and seen_negative:
            return None
    u = tuple(g for g, _ in word[:split])
    v = tuple(g for g, _ in reversed(word[split:]))
    return TerminalForm(u, v)


def reverse_word(
    start: SignedWord, p: Presentation, budget: SearchBudget, target: SignedWord | None
) -> tuple[Outcome[ReversingTrace], dict[SignedWord, tuple]]:
    """Breadth-first reversing from start.

    With a target: definite when the target is reached, definite-no when
    the reachable set is exhausted without truncation.  Returns the search
    tree so callers can enumerate terminals or rebuild traces.
    """
    parents: dict[SignedWord, tuple] = {start: (None, None)}
    if target is not None and start == target:
        return Outcome.yes(ReversingTrace(start, ())), parents
    queue: deque[SignedWord] = deque([start])
    steps = 0
    truncated: str | None = None
    while queue:
        if steps >= budget.max_steps:
            return Outcome.out_of_budget("max_steps"), parents
        steps += 1
        current = queue.popleft()
        for step, nxt in reversing_successors(current, p):
            if nxt in parents:
                continue
            parents[nxt] = (current, step)
            if target is not None and nxt == target:
                return Outcome.yes(_trace_to(start, nxt, parents)), parents
            if len(queue) >= budget.max_frontier:
                truncated = "max_frontier"
                continue
            queue.append(nxt)
    if truncated:
        return Outcome.out_of_budget(truncated), parents
    return Outcome.no(), parents


def _trace_to(start: SignedWord, end: SignedWord, parents: dict) -> ReversingTrace:
    pairs: list[tuple[ReversingStep, SignedWord]] = []
    node = end
    while node != start:
        prev, step = parents[node]
        pairs.append((step, node))
        node = prev
    pairs.reverse()
    return ReversingTrace(start, tuple(pairs))


def reverse_to_empty(
    u: Word, v: Word, p: Presentation, budget: SearchBudget
) -> Outcome[ReversingTrace]:
    """Search for a reversing of u^-1 v to the empty word."""
    p.alphabet.check_word(u)
    p.alphabet.check_word(v)
    start = inverse(u) + embed(v)
    outcome, _ = reverse_word(start, p, budget, target=())
    return outcome


@dataclass
class TerminalEnumeration:
    conforming: list[TerminalForm] = field(default_factory=list)
    stuck: list[SignedWord] = field(default_factory=list)


def terminal_forms(
    word: SignedWord, p: Presentation, budget: SearchBudget
) -> Outcome[TerminalEnumeration]:
    """Enumerate every terminal word reachable from word, split into the
    conforming u v^-1 shapes and the stuck ones.  Budget-exhausted carries
    the partial enumeration."""
    p.alphabet.check_signed(word)
    outcome, parents = reverse_word(word, p, budget, target=None)
    enum = TerminalEnumeration()
    seen: set[tuple[Word, Word]] = set()
    for node in parents:
        if reversing_successors(node, p):
            continue
        form = split_terminal(node)
        if form is None:
            enum.stuck.append(node)
        elif (form.u, form.v) not in seen:
            seen.add((form.u, form.v))
            enum.conforming.append(form)
    if outcome.is_exhausted:
        return Outcome.out_of_budget(outcome.exhausted or "max_steps", enum)
    return Outcome.yes(enum)


# ---------------------------------------------------------------------------
# Completeness criterion and completion


@dataclass(frozen=True)
class RCheckVerdict:
    complete: bool
    witness: tuple[Word, Word] | None = None  # (s*u, t*v) in discovery orientation
    triple: tuple[str, str, str] | None = None

    def __str__(self) -> str:
        if self.complete:
            return "complete"
        su, tv = self.witness or ((), ())
        return f"incomplete: {display_word(su)} = {display_word(tv)} not reversible"


def _conforming_sorted(enum: TerminalEnumeration, p: Presentation) -> list[TerminalForm]:
    order = p.order
    return sorted(enum.conforming, key=lambda f: (order.key(f.u), order.key(f.v)))


def r_completeness_check(
    p: Presentation,
    spec: PseudolengthSpec,
    budget: SearchBudget,
    certified: bool = True,
) -> Outcome[RCheckVerdict]:
    """Run the triple criterion.

    Definite(complete) when every pair passes, Definite(incomplete) with
    the first failing pair in enumeration order (triples scanned in rank
    order, terminal forms deglex-sorted), budget-exhausted when some
    sub-search was inconclusive and no definite failure was found.

    The criterion is only valid for homogeneous presentations; with
    certified=True an invalid certificate raises CertificateError.
    """
    if certified:
        witness = check_pseudolength(p, spec)
        if witness is not None:
            raise CertificateError(witness)
    gens = p.alphabet.generators
    inconclusive: str | None = None
    for s, t, r in product(gens, repeat=3):
        start = inverse((s,)) + embed((r,)) + inverse((r,)) + embed((t,))
        enum_outcome = terminal_forms(start, p, budget)
        if enum_outcome.is_exhausted:
            inconclusive = inconclusive or enum_outcome.exhausted
        enum = enum_outcome.value
        assert enum is not None
        for form in _conforming_sorted(enum, p):
            su = (s,) + form.u
            tv = (t,) + form.v
            verdict = reverse_to_empty(su, tv, p, budget)
            if verdict.is_definite:
                continue
            if verdict.is_definite_no:
                return Outcome.yes(RCheckVerdict(False, (su, tv), (s, t, r)))
            inconclusive = inconclusive or verdict.exhausted
    if inconclusive:
        return Outcome.out_of_budget(inconclusive)
    return Outcome.yes(RCheckVerdict(True))


@dataclass(frozen=True)
class RLogEntry:
    """One relation added by completion, in found and stored orientation."""

    relation: Relation
    su: Word
    tv: Word
    triple: tuple[str, str, str]

    def __str__(self) -> str:
        s, t, r = self.triple
        return (
            f"+ {self.relation}  "
            f"(found as {display_word(self.su)} = {display_word(self.tv)}, triple {s},{t},{r})"
        )


@dataclass
class RCompletionResult:
    status: str
    presentation: Presentation
    log: list[RLogEntry] = field(default_factory=list)
    exhausted: str | None = None
    certified: bool = True

    @property
    def is_definite(self) -> bool:
        return self.status == DEFINITE


def r_complete(
    p: Presentation,
    spec: PseudolengthSpec,
    budget: SearchBudget,
    certified: bool = True,
) -> RCompletionResult:
    """Repeatedly add the first failing pair su = tv until the criterion
    passes or a budget dimension is hit.

    Witness relations are stored deglex-oriented; the log preserves the
    found orientation.  Relations whose leading word exceeds max_word_len,
    or that would push the relation count past max_relations, stop the run.
    """
    current = p
    log: list[RLogEntry] = []
    rounds = 0
    while True:
        if rounds >= budget.max_steps:
            return RCompletionResult(BUDGET_EXHAUSTED, current, log, "max_steps", certified)
        rounds += 1
        checked = r_completeness_check(current, spec, budget, certified)
        if checked.is_exhausted:
            return RCompletionResult(
                BUDGET_EXHAUSTED, current, log, checked.exhausted, certified
            )
        verdict = checked.value
        assert verdict is not None
        if verdict.complete:
            return RCompletionResult(DEFINITE, current, log, None, certified)
        assert verdict.witness is not None and verdict.triple is not None
        su, tv = verdict.witness
        relation = orient(su, tv, current.order)
        assert relation is not None  # su = tv would have reversed to empty
        if len(relation.lhs) > budget.max_word_len:
            return RCompletionResult(
                BUDGET_EXHAUSTED, current, log, "max_word_len", certified
            )
        if len(current.relations) + 1 > budget.max_relations:
            return RCompletionResult(
                BUDGET_EXHAUSTED, current, log, "max_relations", certified
            )
        log.append(RLogEntry(relation, su, tv, verdict.triple))
        current = current.with_relations(current.relations + (relation,))


# ---------------------------------------------------------------------------
# Left reversing (the mirror machinery)


def left_reverse_to_empty(
    u: Word, v: Word, p: Presentation, budget: SearchBudget
) -> Outcome[ReversingTrace]:
    """Left reversing realised by mirroring the words and every relation;
    the returned trace lives in mirrored coordinates."""
    return reverse_to_empty(mirror(u), mirror(v), mirror_presentation(p), budget)


def left_r_completeness_check(
    p: Presentation,
    spec: PseudolengthSpec,
    budget: SearchBudget,
    certified: bool = True,
) -> Outcome[RCheckVerdict]:
    return r_completeness_check(mirror_presentation(p), spec.mirrored(), budget, certified)


def left_r_complete(
    p: Presentation,
    spec: PseudolengthSpec,
    budget: SearchBudget,
    certified: bool = True,
) -> RCompletionResult:
    """Left-reversing completion: mirror, complete, mirror back."""
    mirrored = r_complete(mirror_presentation(p), spec.mirrored(), budget, certified)
    back = mirror_presentation(mirrored.presentation)
    log = [
        RLogEntry(
            orient(mirror(entry.su), mirror(entry.tv), p.order) or entry.relation,
            mirror(entry.su),
            mirror(entry.tv),
            entry.triple,
        )
        for entry in mirrored.log
    ]
    return RCompletionResult(mirrored.status, back, log, mirrored.exhausted, certified)
