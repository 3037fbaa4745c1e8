"""Command-line front end.

Subcommands: info, gcomplete, rcomplete, rcheck, equiv, reverse, cancel,
product.  Every command accepts explicit budget flags, echoes the budget
it ran under, and is deterministic: identical invocations produce
identical bytes.  Exit codes: 0 definite positive / complete / equal,
1 definite negative, 2 budget exhausted or not proved, 64+ usage, parse,
or certificate errors.

Reports print as text by default or as a JSON document with --json; the
schema ships in docs/report-schema.json.  Completion event logs can also
be written as tab-separated files with --log, and reversing diagrams
export to DOT (--dot) and to rendered figures (--fig).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import diagram as diagram_mod
from .cancellativity import (
    NotReducedGroebnerError,
    left_cancellative_by_reversing,
    right_cancellative_by_left_reversing,
    witness_search,
)
from .groebner import g_complete, g_reduce_word
from .presentation import (
    Presentation,
    PresentationParseError,
    PseudolengthSpec,
    SearchBudget,
    check_pseudolength,
    direct_product,
    format_presentation,
    load_presentation,
    oracle_equivalent,
)
from .reversing import (
    CertificateError,
    RCheckVerdict,
    r_complete,
    r_completeness_check,
    reverse_to_empty,
    reversing_successors,
    terminal_forms,
    ReversingTrace,
)
from .words import (
    WordError,
    display_signed_word,
    display_word,
    format_word,
    parse_signed_word,
    parse_word,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2, which collides
        self.print_usage(sys.stderr)  # with the budget-exhausted code
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_budget_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--max-steps", type=int, default=None, help="search step cap")
    sub.add_argument(
        "--max-len", type=int, default=None, help="cap on added relation leading words"
    )
    sub.add_argument("--max-relations", type=int, default=None, help="relation count cap")
    sub.add_argument("--max-frontier", type=int, default=None, help="search queue cap")


def _budget(args) -> SearchBudget:
    defaults = SearchBudget()
    return SearchBudget(
        max_steps=args.max_steps or defaults.max_steps,
        max_word_len=args.max_len or defaults.max_word_len,
        max_relations=args.max_relations or defaults.max_relations,
        max_frontier=args.max_frontier or defaults.max_frontier,
    )


def _budget_json(budget: SearchBudget) -> dict:
    return {
        "max_steps": budget.max_steps,
        "max_word_len": budget.max_word_len,
        "max_relations": budget.max_relations,
        "max_frontier": budget.max_frontier,
    }


def _budget_line(budget: SearchBudget) -> str:
    return (
        f"budget: max_steps={budget.max_steps} max_word_len={budget.max_word_len} "
        f"max_relations={budget.max_relations} max_frontier={budget.max_frontier}"
    )


def _relations_json(relations) -> list[dict]:
    return [{"lhs": format_word(r.lhs), "rhs": format_word(r.rhs)} for r in relations]


def _emit(args, report: dict, text_lines: list[str]) -> int:
    if getattr(args, "json", False):
        print(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            print(line)
    return report["exit_code"]


def _write_log_tsv(path: str, entries) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("lhs\trhs\tsource\n")
        for entry in entries:
            rel = entry.relation
            source = str(entry)
            handle.write(f"{format_word(rel.lhs)}\t{format_word(rel.rhs)}\t{source}\n")


def _declared_spec(p: Presentation) -> PseudolengthSpec:
    return p.declared_pseudolength or PseudolengthSpec.plain()


# ---------------------------------------------------------------------------
# Commands


def cmd_info(args) -> int:
    p = load_presentation(args.file)
    spec = _declared_spec(p)
    witness = check_pseudolength(p, spec)
    homogeneous = witness is None
    lines = [
        "generators: " + " < ".join(p.alphabet.generators),
        f"relations: {len(p.relations)}",
    ]
    lines += [f"  {rel}" for rel in p.relations]
    if homogeneous:
        lines.append(f"homogeneous: yes ({spec})")
    else:
        lines.append(f"homogeneous: no ({spec} fails on {witness})")
    report = {
        "command": "info",
        "status": "ok",
        "exit_code": EXIT_OK,
        "generators": list(p.alphabet.generators),
        "relations": _relations_json(p.relations),
        "pseudolength": str(spec),
        "homogeneous": homogeneous,
        "pseudolength_failure": str(witness) if witness else None,
    }
    return _emit(args, report, lines)


def cmd_gcomplete(args) -> int:
    p = load_presentation(args.file)
    budget = _budget(args)
    result = g_complete(p, budget)
    exit_code = EXIT_OK if result.is_definite else EXIT_BUDGET
    status = "complete" if result.is_definite else "budget-exhausted"
    lines = [_budget_line(budget), f"status: {status}"]
    if result.exhausted:
        lines.append(f"exhausted: {result.exhausted}")
        if result.blocked_on is not None:
            lines.append(f"blocked on: {result.blocked_on}")
    lines.append(f"basis ({len(result.system.rules)} relations):")
    lines += [f"  {rel}" for rel in result.system.rules]
    lines.append("log:")
    lines += [f"  {entry}" for entry in result.log]
    report = {
        "command": "gcomplete",
        "status": status,
        "exit_code": exit_code,
        "budget": _budget_json(budget),
        "exhausted": result.exhausted,
        "basis": _relations_json(result.system.rules),
        "log": [
            {
                "lhs": format_word(e.relation.lhs),
                "rhs": format_word(e.relation.rhs),
                "left_index": e.left_index,
                "right_index": e.right_index,
                "overlap": format_word(e.overlap),
            }
            for e in result.log
        ],
    }
    if args.log:
        _write_log_tsv(args.log, result.log)
    return _emit(args, report, lines)


def cmd_rcomplete(args) -> int:
    p = load_presentation(args.file)
    budget = _budget(args)
    spec = _declared_spec(p)
    try:
        result = r_complete(p, spec, budget, certified=not args.uncertified)
    except CertificateError as exc:
        print(f"error: {exc} (use --uncertified to bypass)", file=sys.stderr)
        return EXIT_DATA
    exit_code = EXIT_OK if result.is_definite else EXIT_BUDGET
    status = "complete" if result.is_definite else "budget-exhausted"
    lines = [_budget_line(budget), f"status: {status}"]
    if args.uncertified:
        lines.append("WARNING: uncertified run, homogeneity gate bypassed")
    if result.exhausted:
        lines.append(f"exhausted: {result.exhausted}")
    lines.append(f"presentation ({len(result.presentation.relations)} relations):")
    lines += [f"  {rel}" for rel in result.presentation.relations]
    lines.append("log:")
    lines += [f"  {entry}" for entry in result.log]
    report = {
        "command": "rcomplete",
        "status": status,
        "exit_code": exit_code,
        "budget": _budget_json(budget),
        "certified": not args.uncertified,
        "exhausted": result.exhausted,
        "relations": _relations_json(result.presentation.relations),
        "log": [
            {
                "lhs": format_word(e.relation.lhs),
                "rhs": format_word(e.relation.rhs),
                "found_lhs": format_word(e.su),
                "found_rhs": format_word(e.tv),
                "triple": list(e.triple),
            }
            for e in result.log
        ],
    }
    if args.log:
        _write_log_tsv(args.log, result.log)
    return _emit(args, report, lines)


def cmd_rcheck(args) -> int:
    p = load_presentation(args.file)
    budget = _budget(args)
    spec = _declared_spec(p)
    try:
        outcome = r_completeness_check(p, spec, budget, certified=not args.uncertified)
    except CertificateError as exc:
        print(f"error: {exc} (use --uncertified to bypass)", file=sys.stderr)
        return EXIT_DATA
    if outcome.is_exhausted:
        status, exit_code, lines = "budget-exhausted", EXIT_BUDGET, [
            _budget_line(budget),
            f"status: budget-exhausted ({outcome.exhausted})",
        ]
        witness = None
    else:
        verdict: RCheckVerdict = outcome.value
        if verdict.complete:
            status, exit_code, lines = "complete", EXIT_OK, [
                _budget_line(budget),
                "status: complete",
            ]
            witness = None
        else:
            status, exit_code = "incomplete", EXIT_NEGATIVE
            su, tv = verdict.witness
            witness = {"lhs": format_word(su), "rhs": format_word(tv)}
            lines = [
                _budget_line(budget),
                "status: incomplete",
                f"witness: {display_word(su)} = {display_word(tv)}",
            ]
    report = {
        "command": "rcheck",
        "status": status,
        "exit_code": exit_code,
        "budget": _budget_json(budget),
        "certified": not args.uncertified,
        "exhausted": outcome.exhausted,
        "witness": witness,
    }
    return _emit(args, report, lines)


def cmd_equiv(args) -> int:
    p = load_presentation(args.file)
    budget = _budget(args)
    u = parse_word(args.word1, p.alphabet)
    v = parse_word(args.word2, p.alphabet)
    detail: dict = {}
    if args.method == "oracle":
        outcome = oracle_equivalent(p, u, v, budget)
        if outcome.is_definite:
            verdict = "equal"
            detail["derivation"] = [display_word(w) for w in outcome.value]
        elif outcome.is_definite_no:
            verdict = "not-equal"
        else:
            verdict = "not-proved"
            detail["exhausted"] = outcome.exhausted
    elif args.method == "reversing":
        outcome = reverse_to_empty(u, v, p, budget)
        if outcome.is_definite:
            verdict = "equal"
            detail["trace_length"] = len(outcome.value.steps)
        else:
            # Reversing refutes equality only on R-complete presentations,
            # so a failed search is reported as not proved.
            verdict = "not-proved"
            detail["exhausted"] = outcome.exhausted
    else:
        completion = g_complete(p, budget)
        system = completion.system
        nf_u = g_reduce_word(u, system)
        nf_v = g_reduce_word(v, system)
        detail["normal_forms"] = [display_word(nf_u), display_word(nf_v)]
        detail["basis_complete"] = completion.is_definite
        if nf_u == nf_v:
            verdict = "equal"
        elif completion.is_definite:
            verdict = "not-equal"
        else:
            verdict = "not-proved"
    exit_code = {"equal": EXIT_OK, "not-equal": EXIT_NEGATIVE, "not-proved": EXIT_BUDGET}[
        verdict
    ]
    lines = [_budget_line(budget), f"{display_word(u)} vs {display_word(v)}: {verdict}"]
    for key, value in detail.items():
        lines.append(f"{key}: {value}")
    report = {
        "command": "equiv",
        "status": verdict,
        "exit_code": exit_code,
        "budget": _budget_json(budget),
        "method": args.method,
        "words": [format_word(u), format_word(v)],
        **detail,
    }
    return _emit(args, report, lines)


def _greedy_trace(word, p: Presentation, budget: SearchBudget) -> tuple[ReversingTrace, bool]:
    """Follow the first successor at every step; deterministic by the
    successor enumeration order.  Returns the trace and whether it ended on
    a terminal word (False means the step cap cut it off)."""
    steps = []
    current = word
    for _ in range(budget.max_steps):
        successors = reversing_successors(current, p)
        if not successors:
            return ReversingTrace(word, tuple(steps)), True
        step, current = successors[0]
        steps.append((step, current))
    return ReversingTrace(word, tuple(steps)), False


def cmd_reverse(args) -> int:
    p = load_presentation(args.file)
    budget = _budget(args)
    start = parse_signed_word(args.word, p.alphabet)
    exit_code = EXIT_OK
    lines: list[str] = [_budget_line(budget)]
    report: dict = {
        "command": "reverse",
        "budget": _budget_json(budget),
        "word": display_signed_word(start),
    }
    if args.all:
        outcome = terminal_forms(start, p, budget)
        enum = outcome.value
        complete = outcome.is_definite
        exit_code = EXIT_OK if complete else EXIT_BUDGET
        lines.append(f"terminal forms ({'complete' if complete else 'partial'}):")
        lines += [f"  {form}" for form in enum.conforming]
        if enum.stuck:
            lines.append("stuck (non-conforming):")
            lines += [f"  {display_signed_word(w)}" for w in enum.stuck]
        report.update(
            {
                "status": "complete" if complete else "budget-exhausted",
                "exit_code": exit_code,
                "terminal_forms": [
                    {"u": format_word(f.u), "v": format_word(f.v)} for f in enum.conforming
                ],
                "stuck": [display_signed_word(w) for w in enum.stuck],
            }
        )
    else:
        trace, finished = _greedy_trace(start, p, budget)
        exit_code = EXIT_OK if finished else EXIT_BUDGET
        lines.append(f"start: {display_signed_word(start)}")
        for step, result in trace.steps:
            lines.append(f"  -> {display_signed_word(result)}")
        lines.append(f"final: {display_signed_word(trace.final)}")
        report.update(
            {
                "status": "terminal" if finished else "budget-exhausted",
                "exit_code": exit_code,
                "steps": [display_signed_word(w) for _, w in trace.steps],
                "final": display_signed_word(trace.final),
            }
        )
        if args.dot or args.fig:
            grid = diagram_mod.build_diagram(trace)
            if args.dot:
                with open(args.dot, "w", encoding="utf-8") as handle:
                    handle.write(diagram_mod.to_dot(grid))
                lines.append(f"dot written to {args.dot}")
            if args.fig:
                diagram_mod.render_figure(grid, args.fig)
                lines.append(f"figure written to {args.fig}")
    return _emit(args, report, lines)


def cmd_cancel(args) -> int:
    p = load_presentation(args.file)
    budget = _budget(args)
    spec = _declared_spec(p)
    if args.method == "reversing":
        runner = (
            left_cancellative_by_reversing
            if args.side == "left"
            else right_cancellative_by_left_reversing
        )
        try:
            result = runner(p, spec, budget, certified=not args.uncertified)
        except CertificateError as exc:
            print(f"error: {exc} (use --uncertified to bypass)", file=sys.stderr)
            return EXIT_DATA
        exit_code = {
            "cancellative": EXIT_OK,
            "not-cancellative": EXIT_NEGATIVE,
            "budget-exhausted": EXIT_BUDGET,
        }[result.verdict]
        lines = [
            _budget_line(budget),
            f"{args.side} cancellative: {result.verdict}",
            f"completeness of the presentation: {result.completeness}",
        ]
        if result.witness:
            lines.append(f"witness relation: {result.witness}")
        report = {
            "command": "cancel",
            "status": result.verdict,
            "exit_code": exit_code,
            "budget": _budget_json(budget),
            "side": args.side,
            "method": "reversing",
            "completeness": result.completeness,
            "witness": str(result.witness) if result.witness else None,
        }
        return _emit(args, report, lines)

    # Witness search over normal forms; needs a completed basis.
    from .presentation import mirror_presentation
    from .words import mirror as mirror_word

    target = p if args.side == "left" else mirror_presentation(p)
    completion = g_complete(target, budget)
    if not completion.is_definite:
        print("error: could not complete the basis within budget", file=sys.stderr)
        return EXIT_BUDGET
    found = witness_search(
        Presentation(target.alphabet, completion.system.rules),
        completion.system,
        args.witness_len,
    )
    if found and args.side == "right":
        s, u, v = found
        found = (s, mirror_word(u), mirror_word(v))
    if found:
        s, u, v = found
        status, exit_code = "not-cancellative", EXIT_NEGATIVE
        lines = [
            _budget_line(budget),
            f"{args.side} cancellative: not-cancellative",
            f"witness: s={s}, u={display_word(u)}, v={display_word(v)}",
        ]
        witness = {"s": s, "u": format_word(u), "v": format_word(v)}
    else:
        status, exit_code = "no-witness", EXIT_OK
        lines = [
            _budget_line(budget),
            f"{args.side} cancellative: no witness up to length {args.witness_len}",
        ]
        witness = None
    report = {
        "command": "cancel",
        "status": status,
        "exit_code": exit_code,
        "budget": _budget_json(budget),
        "side": args.side,
        "method": "witness",
        "witness_len": args.witness_len,
        "witness": witness,
    }
    return _emit(args, report, lines)


def cmd_product(args) -> int:
    p1 = load_presentation(args.file1)
    p2 = load_presentation(args.file2)
    product = direct_product(p1, p2)
    text = format_presentation(product)
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(text)
    lines = [f"product written to {args.output}", f"relations: {len(product.relations)}"]
    report = {
        "command": "product",
        "status": "ok",
        "exit_code": EXIT_OK,
        "output": args.output,
        "generators": list(product.alphabet.generators),
        "relations": _relations_json(product.relations),
    }
    return _emit(args, report, lines)


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="monoidkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("info", parents=[], help="inspect a presentation file")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("gcomplete", help="run Groebner completion")
    sp.add_argument("file")
    _add_budget_flags(sp)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--log", help="write the event log as TSV")
    sp.set_defaults(func=cmd_gcomplete)

    sp = sub.add_parser("rcomplete", help="run reversing completion")
    sp.add_argument("file")
    _add_budget_flags(sp)
    sp.add_argument("--uncertified", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--log", help="write the event log as TSV")
    sp.set_defaults(func=cmd_rcomplete)

    sp = sub.add_parser("rcheck", help="check reversing completeness")
    sp.add_argument("file")
    _add_budget_flags(sp)
    sp.add_argument("--uncertified", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_rcheck)

    sp = sub.add_parser("equiv", help="decide whether two words are equal")
    sp.add_argument("file")
    sp.add_argument("word1")
    sp.add_argument("word2")
    sp.add_argument(
        "--method", choices=["groebner", "reversing", "oracle"], default="groebner"
    )
    _add_budget_flags(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("reverse", help="reverse a signed word")
    sp.add_argument("file")
    sp.add_argument("word")
    sp.add_argument("--all", action="store_true", help="enumerate all terminal forms")
    sp.add_argument("--dot", help="write the trace diagram as DOT")
    sp.add_argument("--fig", help="render the trace diagram to an image file")
    _add_budget_flags(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_reverse)

    sp = sub.add_parser("cancel", help="test cancellativity")
    sp.add_argument("file")
    sp.add_argument("--side", choices=["left", "right"], default="left")
    sp.add_argument("--method", choices=["reversing", "witness"], default="reversing")
    sp.add_argument("--witness-len", type=int, default=4)
    _add_budget_flags(sp)
    sp.add_argument("--uncertified", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_cancel)

    sp = sub.add_parser("product", help="direct product of two presentations")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_product)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PresentationParseError, WordError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotReducedGroebnerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
