"""Command line entry point.

Exit codes: 0 success, 1 unreadable or malformed input, 2 a violated
precondition, 3 a failed mathematical property.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from toricquot import __version__
from toricquot.constants import (
    DEFAULT_SEED,
    GENUS_TWO_PRIME_DEFAULT,
    OUTPUT_FORMATS,
    PRINCIPAL_UNITS,
    SELFTEST_COUNT_DEFAULT,
)
from toricquot.constants import messages as msg
from toricquot.data_loader import document_from_lattice, dump_document, load_document, parse_document, write_document
from toricquot.exceptions import EXIT_OK, EXIT_PROPERTY, ConsistencyError, ToricQuotError
from toricquot.local_field import LocalFieldModel
from toricquot.report import build_analysis_report, render_machine, render_text
from toricquot.selftest import run_selftest
from toricquot.tate_construction import build_glued_lattice, verify_genus_two_example

__all__ = ["build_parser", "main", "cmd_analyze", "cmd_glue", "cmd_genus_two", "cmd_selftest"]

logger = logging.getLogger(__name__)


def _field_triple(text: str) -> tuple[int, int, int]:
    try:
        p, q, w = (int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected p,q,w as three integers, got {text!r}") from exc
    return p, q, w


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def cmd_analyze(args: argparse.Namespace) -> int:
    doc = load_document(args.path)
    report = build_analysis_report(doc, bound=args.bound, units=args.units)
    _emit(render_machine(report) if args.format == "machine" else render_text(report))
    return EXIT_OK


def cmd_glue(args: argparse.Namespace) -> int:
    field = LocalFieldModel(*args.field)
    q1 = field.strict_unit(args.q1_v, args.q1_t)
    q2 = field.strict_unit(args.q2_v, args.q2_t)
    lattice = build_glued_lattice(q1, q2, args.c, field, args.zeta_power)
    doc = document_from_lattice(lattice)
    text = dump_document(doc)

    report = build_analysis_report(parse_document(text, "<glue>"))
    c_values = [analysis.invariants.c for analysis in report.subvarieties]
    if len(c_values) != 2 or any(c != args.c for c in c_values):
        raise ConsistencyError(msg.ERROR_MSG_PROPERTY.format(name="glue round trip", detail=c_values))

    summary = render_machine(report) if args.format == "machine" else render_text(report)
    if args.out:
        write_document(doc, args.out)
        logger.info("lattice document written to %s", args.out)
        _emit(summary)
    else:
        # stdout carries the document so it can be piped into `analyze`
        _emit(text)
        sys.stderr.write(summary)
    return EXIT_OK


def cmd_genus_two(args: argparse.Namespace) -> int:
    report = verify_genus_two_example(args.prime)
    lines = [f"Worked example at p = {report.prime}"]
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"  [{status}] {check.name}: {check.detail}")
    _emit("\n".join(lines) + "\n")
    return EXIT_OK if report.all_passed else EXIT_PROPERTY


def cmd_selftest(args: argparse.Namespace) -> int:
    result = run_selftest(seed=args.seed, count=args.count, jobs=args.jobs, mutate=args.mutate)
    lines = [f"Self-test seed={result.seed} count={result.count}"]
    for outcome in result.outcomes:
        status = "PASS" if outcome.passed else "FAIL"
        lines.append(f"  [{status}] {outcome.name} ({outcome.checked - outcome.failures}/{outcome.checked})")
        if not outcome.passed:
            lines.append(f"      {outcome.detail}")
    for outcome in result.outcomes:
        if outcome.counterexample:
            lines += [f"Counterexample for {outcome.name}:", outcome.counterexample.rstrip("\n")]
    _emit("\n".join(lines) + "\n")
    return result.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricquot",
        description="Optimal quotients of abelian varieties with split toric reduction.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="Analyze a lattice document")
    analyze.add_argument("path", help="Lattice document (JSON)")
    analyze.add_argument("--bound", type=int, default=None, help="Cocharacter enumeration bound B")
    analyze.add_argument("--format", choices=OUTPUT_FORMATS, default="text")
    analyze.add_argument("--units", choices=sorted(PRINCIPAL_UNITS), default=None, help="Principal-unit reading")
    analyze.set_defaults(handler=cmd_analyze)

    glue = sub.add_parser("glue", help="Build the lattice glued along an anti-isometry of c-torsion")
    for name in ("q1_v", "q1_t", "q2_v", "q2_t", "c"):
        glue.add_argument(name, type=int)
    glue.add_argument("--field", type=_field_triple, required=True, metavar="P,Q,W")
    glue.add_argument("--zeta-power", type=int, default=1, help="Use zeta^k as the primitive root")
    glue.add_argument("--out", default=None, help="Write the document here and print the analysis")
    glue.add_argument("--format", choices=OUTPUT_FORMATS, default="text")
    glue.set_defaults(handler=cmd_glue)

    example = sub.add_parser("genus-two", help="Verify the worked genus-two example")
    example.add_argument("--prime", type=int, default=GENUS_TWO_PRIME_DEFAULT)
    example.set_defaults(handler=cmd_genus_two)

    selftest = sub.add_parser("selftest", help="Run the seeded property suites")
    selftest.add_argument("--seed", type=int, default=DEFAULT_SEED)
    selftest.add_argument("--count", type=int, default=SELFTEST_COUNT_DEFAULT)
    selftest.add_argument("--jobs", type=int, default=1)
    selftest.add_argument("--mutate", action="store_true", help=argparse.SUPPRESS)
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except ToricQuotError as exc:
        sys.stderr.write(f"error: {exc}\n")
        for witness in exc.witnesses[:5]:
            sys.stderr.write(f"  witness: {witness}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
