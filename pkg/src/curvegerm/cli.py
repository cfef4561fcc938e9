"""Command-line interface.

Exit codes: 0 success, 1 input error (bad document, invalid germ, precision
or degree cap exhausted, usage), 2 mathematical inconsistency.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import Sequence, TextIO

from .branches import START_PRECISION, InvariantReport, analyze_germ
from .checks import random_check, verify_corpus
from .corpus import DEFAULT_CORPUS, load_corpus
from .documents import branch_lines, load_germ, load_table, table_to_dict
from .errors import GermError, InvalidGermError, UndeterminedError
from .ledger import euler_star, ledger_lines, mu_isolated
from .oracle import DEFAULT_DEGREE_CAP, MAX_DEGREE_CAP
from .series import PRECISION_CAP

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code rather than argparse's 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _dump_json(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


# ---------------------------------------------------------------------------
# analyze


def format_report(rep: InvariantReport) -> str:
    lines = [f"germ: {rep.name or '(unnamed)'}", f"branches r = {rep.r}"]
    for b in rep.per_branch:
        sg = b.semigroup
        gens = ", ".join(map(str, sg.generators()))
        lines.append(
            f"  {b.label}: multiplicity {b.multiplicity}, delta {b.delta}, "
            f"semigroup <{gens}>, conductor {sg.conductor}, gaps {list(sg.gaps)}"
        )
    if rep.r > 1:
        lines.append("intersection multiplicities:")
        labels = [b.label for b in rep.per_branch]
        width = max(len(s) for s in labels)
        for label, row in zip(labels, rep.intersection_matrix):
            cells = " ".join(f"{'-' if v is None else v:>3}" for v in row)
            lines.append(f"  {label:<{width}} {cells}")
    lines += [
        f"delta (branches + intersections) = {rep.delta_total}",
        f"delta (cokernel of normalization) = {rep.cokernel_delta}",
        f"mu = 2*delta - r + 1 = {rep.mu_parameterized}",
        f"complex link mu = delta - r + 1 = {rep.complex_link_mu}",
    ]
    if rep.implicit_equation is not None:
        lines.append(f"implicit equation: {rep.implicit_equation} = 0")
        lines.append(f"oracle mu = dim O/(g_x, g_y) = {rep.oracle_mu}")
    if rep.oracle_note:
        lines.append(rep.oracle_note)
    lines.append(f"precision used: {rep.precision_used}")
    for name, ok in rep.checks.items():
        lines.append(f"check {name}: {'pass' if ok else 'FAIL'}")
    lines.append(f"consistent: {'yes' if rep.consistent else 'NO'}")
    return "\n".join(lines)


def _locate(violation: str, lines: list[int]) -> str:
    """Append the document line of the first branch a violation names."""
    m = re.match(r"branch(?:es)? (?:b)?(\d+)", violation)
    if m and int(m.group(1)) < len(lines):
        return f"{violation} (document line {lines[int(m.group(1))]})"
    return violation


def cmd_analyze(args, out: TextIO) -> int:
    germ = load_germ(args.file)
    precision = args.precision or germ.precision_hint or START_PRECISION
    t0 = time.perf_counter()
    try:
        rep = analyze_germ(germ, oracle=args.oracle, precision=precision, cap=args.cap, degree_cap=args.degree_cap)
    except InvalidGermError as exc:
        lines = branch_lines(args.file)
        for v in exc.violations:
            print(f"error: {_locate(v, lines)}", file=sys.stderr)
        return exc.exit_code
    elapsed = time.perf_counter() - t0
    if args.format == "json":
        doc = rep.to_dict()
        if args.timing:
            doc["wall_seconds"] = round(elapsed, 3)
        _dump_json(doc, out)
    else:
        print(format_report(rep), file=out)
        if args.timing:
            print(f"wall time: {elapsed:.3f} s", file=out)
    return EXIT_OK if rep.consistent else EXIT_INCONSISTENT


# ---------------------------------------------------------------------------
# euler


def cmd_euler(args, out: TextIO) -> int:
    table = load_table(args.file)
    if args.format == "json":
        doc = {"table": table_to_dict(table), "reduced_euler": euler_star(table)}
        if table.isolated:
            doc["mu_isolated"] = mu_isolated(table)
        doc["lines"] = {name.strip(): v for name, v in ledger_lines(table)}
        _dump_json(doc, out)
        return EXIT_OK
    print(f"table: n = {table.n}, r = {table.r}, chi_Xk = {dict(sorted(table.chi_Xk.items()))}, "
          f"upstairs = {list(table.upstairs)}, isolated = {table.isolated}", file=out)
    for name, value in ledger_lines(table):
        print(f"{name}: {value}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify-corpus


def cmd_verify_corpus(args, out: TextIO) -> int:
    entries = load_corpus(args.corpus) if args.corpus else list(DEFAULT_CORPUS)
    names = {e.name for e in entries}
    if args.filter is not None and args.filter not in names:
        print(f"error: no corpus germ named {args.filter!r}", file=sys.stderr)
        return EXIT_INPUT
    rows = verify_corpus(entries, args.filter, args.jobs)
    if args.format == "json":
        _dump_json({"rows": [r.to_dict() for r in rows], "all_passed": all(r.passed for r in rows)}, out)
    else:
        header = f"{'name':<12} {'r':>2} {'delta':>5} {'mu':>4} {'oracle':>6} {'coker':>5} {'mu_iso':>6}  verdict"
        print(header, file=out)
        for r in rows:
            cells = [r.r, r.delta, r.mu, r.oracle_mu, r.cokernel_delta, r.mu_isolated]
            r_, d, m, o, c, i = ("?" if v is None else v for v in cells)
            verdict = "pass" if r.passed else "FAIL"
            print(f"{r.name:<12} {r_:>2} {d:>5} {m:>4} {o:>6} {c:>5} {i:>6}  {verdict}", file=out)
        for r in rows:
            for msg in r.mismatches:
                print(f"mismatch in {r.name}: {msg}", file=out)
            if r.error:
                print(f"error in {r.name}: {r.error}", file=out)
        passed = sum(r.passed for r in rows)
        print(f"{passed}/{len(rows)} germs passed", file=out)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_INCONSISTENT


# ---------------------------------------------------------------------------
# random-check


def cmd_random_check(args, out: TextIO) -> int:
    summary = random_check(args.count, args.seed, args.jobs)
    if args.format == "json":
        _dump_json(
            {
                "count": summary.count,
                "seed": summary.seed,
                "rejected_candidates": summary.rejected,
                "passed": summary.passed,
                "skipped": summary.skipped,
                "failed": len(summary.failures),
                "outcomes": [o.__dict__ for o in summary.outcomes],
            },
            out,
        )
    else:
        for o in summary.outcomes:
            if o.status == "pass":
                print(f"{o.name}: delta {o.delta} = cokernel {o.cokernel_delta}, mu {o.mu} = oracle {o.oracle_mu}", file=out)
            elif o.status == "skip":
                print(f"{o.name}: skipped ({o.detail})", file=out)
            else:
                print(f"{o.name}: MISMATCH {o.detail}", file=out)
                print(f"  replay: {o.germ_json}", file=out)
        print(
            f"seed {summary.seed}: {summary.passed} passed, {summary.skipped} skipped, "
            f"{len(summary.failures)} failed of {summary.count} "
            f"({summary.rejected} invalid candidates rejected)",
            file=out,
        )
    return EXIT_INCONSISTENT if summary.failures else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvegerm", description="Exact invariants of parameterized plane-curve germs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="invariants of one germ document")
    a.add_argument("file")
    a.add_argument("--oracle", action="store_true", help="also run the implicit-equation channel")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--precision", type=_positive, default=None, help=f"starting precision (default {START_PRECISION})")
    a.add_argument("--cap", type=_positive, default=PRECISION_CAP, help="global series precision cap")
    a.add_argument("--degree-cap", type=_positive, default=DEFAULT_DEGREE_CAP,
                   help=f"truncation degree cap for the oracle (at most {MAX_DEGREE_CAP})")
    a.add_argument("--timing", action="store_true", help="report wall time (makes output non-reproducible)")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("euler", help="evaluate a stratum table")
    e.add_argument("file")
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.set_defaults(func=cmd_euler)

    v = sub.add_parser("verify-corpus", help="run the classical corpus through both channels")
    v.add_argument("--filter", default=None, metavar="NAME")
    v.add_argument("--corpus", default=None, metavar="FILE", help="corpus file instead of the embedded one")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--jobs", type=_positive, default=1)
    v.set_defaults(func=cmd_verify_corpus)

    r = sub.add_parser("random-check", help="compare both channels on seeded random germs")
    r.add_argument("--count", type=_positive, required=True)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.add_argument("--jobs", type=_positive, default=1)
    r.set_defaults(func=cmd_random_check)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except UndeterminedError as exc:
        print(f"error: undetermined in {exc.operation}: {exc}", file=sys.stderr)
        return exc.exit_code
    except GermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
