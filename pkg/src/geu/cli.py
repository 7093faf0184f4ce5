"""Command-line interface.

Usage::

    geu validate PROBLEM.json
    geu eval PROBLEM.json --act aL [--restrict s1,s2] [--statewise]
    geu prefs PROBLEM.json
    geu synthesize PROBLEM.json --construction {thm1,corollary,fixed}
    geu check PROBLEM.json --postulates 1a,2 --axioms 1a,2 --version general
    geu verify PROBLEM.json --set 1a,1b,2,3,4,5,6
    geu acts PROBLEM.json --enumerate

Exit status: 0 when every record holds, 1 when some check fails, 2 for
input, validation or precondition errors, 3 when a budget is exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from .algebra import validate_domain
from .decision import (enumerate_simple_acts, geu, geu_restricted, geu_statewise, induced_preference,
                       is_additive, is_whole)
from .document import ParsedProblem, emit_document, parse_document
from .errors import BudgetExceeded, GEUError, ParseError, PreconditionError
from .measures import validate_measure
from .results import CheckResult
from .savage import check_A, check_P, parse_indices, verify_representation
from .synthesis import synthesize
from .values import render, to_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Report:
    """Records plus enough context to make output reproducible."""

    def __init__(self, command: list[str], digest: str, budgets: dict, states=(), consequences=()):
        self.command = command
        self.digest = digest
        self.budgets = budgets
        self.records: list[dict] = []
        self.extra: dict[str, Any] = {}
        self.timing: float | None = None
        self.states, self.consequences = states, consequences

    def value(self, v) -> Any:
        return to_json(v, self.states, self.consequences)

    def text_value(self, v) -> str:
        return render(v, self.states, self.consequences)

    def add_check(self, r: CheckResult, **extra) -> None:
        rec = {"name": r.name, "version": r.version, "holds": r.holds,
               "witness": None if r.witness is None else {k: self.value(v) for k, v in r.witness.items()},
               "vacuous": r.vacuous}
        rec.update(extra)
        rec["_text_witness"] = None if r.witness is None else ", ".join(
            f"{k}={self.text_value(v)}" for k, v in r.witness.items())
        self.records.append(rec)

    def add(self, **rec) -> None:
        rec.setdefault("holds", True)
        self.records.append(rec)

    @property
    def ok(self) -> bool:
        return all(r["holds"] for r in self.records)

    def as_json(self) -> dict:
        out = {"command": self.command, "input_digest": self.digest, "budgets": self.budgets,
               "records": [{k: v for k, v in r.items() if k != "text" and not k.startswith("_")}
                           for r in self.records]}
        out.update(self.extra)
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 6)
        return out

    def as_text(self) -> str:
        lines = [f"# {' '.join(self.command)}", f"# input sha256:{self.digest}"]
        for r in self.records:
            if "text" in r:
                lines.append(r["text"])
                continue
            version = f" [{r['version']}]" if r.get("version") else ""
            if r["holds"]:
                tail = f" (vacuous {r['vacuous']})" if r.get("vacuous") else ""
                lines.append(f"{r['name']}{version}: holds{tail}")
            else:
                lines.append(f"{r['name']}{version}: FAILS witness {{{r.get('_text_witness') or ''}}}")
        if self.timing is not None:
            lines.append(f"# time {self.timing:.3f}s")
        return "\n".join(lines) + "\n"


def _states_arg(text: str) -> list[str]:
    return [s for s in (p.strip() for p in text.split(",")) if s]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geu", description="Generalized expected utility toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem document (JSON)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--budget-acts", type=int, default=4096)
    common.add_argument("--budget-partitions", type=int, default=203)
    common.add_argument("--budget-probes", type=int, default=10_000)
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check domain and measure laws")
    p = sub.add_parser("eval", parents=[common], help="expected utility of one act")
    p.add_argument("--act", required=True)
    p.add_argument("--restrict", type=_states_arg, help="comma-separated states")
    p.add_argument("--statewise", action="store_true")
    sub.add_parser("prefs", parents=[common], help="induced preference relation")
    p = sub.add_parser("synthesize", parents=[common], help="represent the document's preference")
    p.add_argument("--construction", choices=("thm1", "corollary", "fixed"), required=True)
    p = sub.add_parser("check", parents=[common], help="decide postulates and axioms")
    p.add_argument("--postulates", default="")
    p.add_argument("--axioms", default="")
    p.add_argument("--version", choices=("general", "special"), default="general")
    p = sub.add_parser("verify", parents=[common], help="compare axioms with postulates")
    p.add_argument("--set", dest="indices", default="1a,1b,2,3,4,5,6")
    p = sub.add_parser("acts", parents=[common], help="list acts")
    p.add_argument("--enumerate", action="store_true", help="all simple acts instead of A")
    return parser


def _run(args, parsed: ParsedProblem, report: Report) -> None:
    D = parsed.problem
    sit = D.situation
    if args.command == "validate":
        for r in validate_domain(D.domain, args.budget_probes).results:
            report.add_check(r, subject="domain")
        for r in validate_measure(D.plausibility, D.domain).results:
            report.add_check(r, subject="measure")
        report.extra["additive"] = is_additive(D).holds
        report.extra["whole"] = sit.is_complete() or is_whole(D, args.budget_acts).holds
    elif args.command == "eval":
        if args.restrict:
            v = geu_restricted(D, args.act, args.restrict)
        elif args.statewise:
            v = geu_statewise(D, args.act)
        else:
            v = geu(D, args.act)
        report.add(name="geu", act=args.act, restrict=args.restrict, value=report.value(v),
                   text=report.text_value(v))
    elif args.command == "prefs":
        rel = induced_preference(D)
        for a, b in rel.sorted_pairs():
            report.add(name="pref", pair=[a, b], text=f"{a} <= {b}")
    elif args.command == "synthesize":
        if parsed.preference is None:
            raise ParseError("synthesize needs a preference", "/preference")
        synth = synthesize(sit, parsed.preference, args.construction)
        round_trip = induced_preference(synth.problem).pairs == parsed.preference.pairs
        report.add(name="round-trip", holds=round_trip, construction=synth.construction,
                   text=f"round-trip ({synth.construction}): {'holds' if round_trip else 'FAILS'}")
        report.extra["problem"] = emit_document(ParsedProblem(synth.problem, parsed.preference, {}))
        if args.format == "text":
            report.records.append({"holds": True, "text": json.dumps(report.extra["problem"], sort_keys=False)})
    elif args.command == "check":
        postulates = parse_indices(args.postulates) if args.postulates else []
        axioms = parse_indices(args.axioms) if args.axioms else []
        if not postulates and not axioms:
            raise ParseError("nothing to check: give --postulates and/or --axioms")
        pref = parsed.preference if parsed.preference is not None else induced_preference(D)
        for i in postulates:
            report.add_check(check_P(sit, pref, i, args.version, args.budget_partitions))
        for i in axioms:
            report.add_check(check_A(D, i, args.version, partition_budget=args.budget_partitions,
                                     act_budget=args.budget_acts))
    elif args.command == "verify":
        rep = verify_representation(D, parse_indices(args.indices), args.budget_partitions, args.budget_acts)
        for row in rep.rows:
            report.add(name=f"A{row.index}<=>P{row.index}", holds=row.holds,
                       axiom=row.axiom.holds, postulate=row.postulate.holds,
                       text=f"A{row.index} {_word(row.axiom.holds)} <=> P{row.index} {_word(row.postulate.holds)}: "
                            f"{'agree' if row.holds else 'DISAGREE'}")
        report.add(name="all", holds=rep.conjunction, axiom=rep.axioms_hold, postulate=rep.postulates_hold,
                   text=f"all {_word(rep.axioms_hold)} <=> {_word(rep.postulates_hold)}: "
                        f"{'agree' if rep.conjunction else 'DISAGREE'}")
    elif args.command == "acts":
        acts = enumerate_simple_acts(sit, args.budget_acts) if args.enumerate else sit.outcomes
        for outs in acts:
            name = sit.name_of(outs)
            report.add(name="act", act=name, outcomes=list(outs),
                       text=f"{name or '-'}: " + " ".join(f"{s}->{c}" for s, c in zip(sit.states, outs)))


def _word(b: bool) -> str:
    return "true" if b else "false"


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    argv = list(sys.argv[1:] if argv is None else argv)
    budgets = {"acts": args.budget_acts, "partitions": args.budget_partitions, "probes": args.budget_probes}
    start = time.perf_counter()
    try:
        raw = Path(args.problem).read_bytes()
    except OSError as exc:
        print(f"error: cannot read {args.problem}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    digest = hashlib.sha256(raw).hexdigest()
    try:
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        parsed = parse_document(doc, act_budget=args.budget_acts, probe_budget=args.budget_probes)
        sit = parsed.problem.situation
        report = Report(argv, digest, budgets, sit.states, sit.consequences)
        _run(args, parsed, report)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GEUError, ValueError) as exc:
        kind = "precondition" if isinstance(exc, PreconditionError) else "error"
        print(f"{kind}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        report.timing = time.perf_counter() - start
    if args.format == "json":
        out = json.dumps(report.as_json(), indent=2, ensure_ascii=False) + "\n"
    else:
        out = report.as_text()
    sys.stdout.write(out)
    sys.stdout.flush()
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
