"""Command-line entry point.

``run_command`` does all the work and returns the exit code with the text
destined for stdout and stderr, so callers (and tests) never need to
capture the real streams. Exit codes: 0 success, 1 parse, validation or
other domain error, 2 failed property suite, 3 internal cap exceeded.
"""

import argparse
import io
import json
import sys
import time
from contextlib import redirect_stderr, redirect_stdout
from typing import Any, Callable, List, NamedTuple, Optional, Sequence, Tuple

from ...domain.entities import AssignShape, HullQuery, SuiteResult
from ...domain.exceptions import (
    CeilingExceeded,
    DomainException,
    PropertyViolation,
    SizeLimitExceeded,
    UndecidableLiteral,
    ValidationError,
)
from ...domain.terms import BIG_I
from ...infrastructure.config import LOG_LEVELS, ConfigManager, get_settings
from ...infrastructure.logging import get_logger, setup_logging
from ...services.arithmetic_service import normalize
from ...services.bound_service import theorem1_trace, theorem2_trace
from ...services.check_service import FormulaGenerator, PropertyChecker
from ...services.enumeration_service import enumerate_below
from ...services.formula_service import assign_shape, classify, rank
from ...services.hull_service import hull_clause
from ...services.mahlo_service import abgam
from ...services.order_service import cmp, theta_set
from ...services.validation_service import validate
from . import printer
from .codec import decode_formula, decode_term, dumps, encode_error
from .parser import parse_formula, parse_term, parse_terms

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PROPERTY = 2
EXIT_CAP = 3

ROUND_TRIP_FORMULAS = 500


class Outcome(NamedTuple):
    """What a subcommand produced: JSON payload, text lines and an optional failure."""

    payload: Any
    lines: List[str]
    failure: Optional[PropertyViolation] = None


# -- subcommands ------------------------------------------------------


def _cmd_cmp(args: argparse.Namespace) -> Outcome:
    left, right = parse_term(args.left), parse_term(args.right)
    result = cmp(left, right)
    return Outcome({"result": str(result), "left": left, "right": right}, [str(result)])


def _cmd_nf(args: argparse.Namespace) -> Outcome:
    term = parse_term(args.term, check=False)
    nf = normalize(term)
    report = validate(nf)
    if report.first is not None:
        violation = report.first
        raise ValidationError(str(violation), field=violation.clause, value=str(violation.subterm))
    payload = {"input": term, "normal_form": nf, "canonical": nf == term}
    return Outcome(payload, [printer.print_term(nf)])


def _cmd_rank(args: argparse.Namespace) -> Outcome:
    formula = parse_formula(args.formula)
    result = rank(formula)
    return Outcome({"formula": formula, "rank": result}, [printer.print_term(result)])


def _cmd_classify(args: argparse.Namespace) -> Outcome:
    formula = parse_formula(args.formula)
    lam = parse_term(args.lam)
    result = classify(formula, lam, args.n)
    try:
        shape: Optional[AssignShape] = assign_shape(formula, args.n)
    except UndecidableLiteral:
        shape = None
    payload = {"classification": result, "shape": shape, "lambda": lam, "n": args.n}
    return Outcome(payload, printer.render_classify(result, shape))


def _cmd_hull(args: argparse.Namespace) -> Outcome:
    term = parse_term(args.term)
    query = HullQuery(
        alpha=parse_term(args.alpha),
        n=args.n,
        threshold=parse_term(args.beta),
        theta=theta_set(parse_terms(args.theta)),
        kappa_ctx=parse_term(args.kappa) if args.kappa else None,
    )
    clause = hull_clause(term, query)
    payload = {"term": term, "member": clause is not None, "clause": clause}
    return Outcome(payload, printer.render_hull(term, clause))


def _cmd_abgam(args: argparse.Namespace) -> Outcome:
    record = abgam(args.n, args.big_n)
    return Outcome(record, printer.render_abgam(record))


def _cmd_enum(args: argparse.Namespace) -> Outcome:
    below = parse_term(args.below)
    subscripts = args.subscripts or (1,)
    terms = enumerate_below(below, args.size, subscripts=subscripts, big_n=args.big_n)
    payload = {"below": below, "size": args.size, "count": len(terms), "terms": terms}
    return Outcome(payload, [printer.print_term(t) for t in terms])


def _cmd_trace(args: argparse.Namespace) -> Outcome:
    if args.which == "thm1":
        states = theorem1_trace(args.m, args.p, args.big_n, k=args.k)
    else:
        states = theorem2_trace(args.m, args.p, args.big_n)
    payload = {"trace": args.which, "states": states}
    return Outcome(payload, printer.render_trace(states))


def round_trip_suite(size: int, formulas: int = ROUND_TRIP_FORMULAS) -> SuiteResult:
    """Print/parse and JSON export/import identity over enumerated terms and formulas."""
    result, started = SuiteResult("round_trip"), time.perf_counter()
    for term in enumerate_below(BIG_I, size):
        result.checked += 1
        text = printer.print_term(term)
        try:
            if parse_term(text) != term:
                result.failures.append(f"parse(print(t)) != t for {text}")
            elif decode_term(json.loads(dumps(term))) != term:
                result.failures.append(f"json re-import differs for {text}")
        except DomainException as e:
            result.failures.append(f"{text}: {e}")
    for formula in FormulaGenerator(seed=1).corpus(formulas, depth=3):
        result.checked += 1
        text = printer.print_formula(formula)
        try:
            if parse_formula(text) != formula:
                result.failures.append(f"parse(print(F)) != F for {text}")
            elif decode_formula(json.loads(dumps(formula))) != formula:
                result.failures.append(f"json re-import differs for {text}")
        except DomainException as e:
            result.failures.append(f"{text}: {e}")
    result.seconds = time.perf_counter() - started
    logger.info("suite_finished", suite=result.name, checked=result.checked)
    return result


def _cmd_check(args: argparse.Namespace) -> Outcome:
    checker = PropertyChecker(size=args.size, corpus_size=args.corpus)
    checker.register("round_trip", lambda: round_trip_suite(min(args.size, 6)))
    results = checker.run_all(only=args.suite)
    lines: List[str] = []
    for result in results:
        lines.extend(printer.render_suite(result))
    failed = [r for r in results if not r.passed]
    failure = None
    if failed:
        failure = PropertyViolation(
            ", ".join(r.name for r in failed), sum(len(r.failures) for r in failed)
        )
    payload = {"passed": not failed, "suites": results}
    return Outcome(payload, lines, failure)


# -- argument parsing -------------------------------------------------


def _subcommand(
    subparsers: Any, name: str, handler: Callable[[argparse.Namespace], Outcome], text: str
) -> argparse.ArgumentParser:
    sub = subparsers.add_parser(name, help=text, description=text)
    sub.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS, help="Machine-readable output"
    )
    sub.set_defaults(handler=handler)
    return sub


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordkit", description="Symbolic ordinal notation toolkit"
    )
    parser.add_argument("--json", action="store_true", help="Machine-readable output")
    parser.add_argument(
        "--log-level", choices=LOG_LEVELS, default=None, help="Log level (stderr)"
    )
    parser.add_argument("--log-json", action="store_true", help="Log JSON lines")
    parser.add_argument(
        "--max-tower", type=int, default=None, help="Height of the tower ceiling"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = _subcommand(subparsers, "cmp", _cmd_cmp, "Compare two terms (LT, EQ or GT)")
    sub.add_argument("left")
    sub.add_argument("right")

    sub = _subcommand(subparsers, "nf", _cmd_nf, "Print the normal form of a term")
    sub.add_argument("term")

    sub = _subcommand(subparsers, "rank", _cmd_rank, "Print the rank of a formula")
    sub.add_argument("formula")

    sub = _subcommand(subparsers, "classify", _cmd_classify, "Classify a formula")
    sub.add_argument("formula")
    sub.add_argument("--lambda", dest="lam", default="K", help="Regular lambda")
    sub.add_argument("--n", type=int, default=1, help="Subscript n >= 1")

    sub = _subcommand(subparsers, "hull", _cmd_hull, "Decide hull membership")
    sub.add_argument("term")
    sub.add_argument("--alpha", required=True, help="Hull stage")
    sub.add_argument("--beta", default="0", help="Threshold: all terms below it")
    sub.add_argument("--theta", default="", help="Comma separated parameters")
    sub.add_argument("--kappa", default=None, help="Collapse target put into the hull")
    sub.add_argument("--n", type=int, default=1, help="Subscript n >= 1")

    sub = _subcommand(subparsers, "abgam", _cmd_abgam, "Print b_n, a_n, gamma and alpha")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--N", dest="big_n", type=int, required=True)

    sub = _subcommand(subparsers, "enum", _cmd_enum, "Enumerate normal forms below a bound")
    sub.add_argument("--below", required=True)
    sub.add_argument("--size", type=int, default=3)
    sub.add_argument(
        "--subscript",
        dest="subscripts",
        type=int,
        action="append",
        default=None,
        help="Collapse subscript to use (repeatable, default 1)",
    )
    sub.add_argument("--N", dest="big_n", type=int, default=None)

    sub = _subcommand(subparsers, "trace", _cmd_trace, "Bound trace of a conservation proof")
    sub.add_argument("which", choices=("thm1", "thm2"))
    sub.add_argument("--m", type=int, default=0)
    sub.add_argument("--p", type=int, default=0)
    sub.add_argument("--N", dest="big_n", type=int, default=2)
    sub.add_argument("--k", type=int, default=0, help="Target theory level (thm1)")

    sub = _subcommand(subparsers, "check", _cmd_check, "Run the property suites")
    sub.add_argument("--size", type=int, default=6, help="Largest enumerated term size")
    sub.add_argument("--corpus", type=int, default=None, help="Number of random formulas")
    sub.add_argument("--suite", action="append", default=None, help="Run only this suite")
    return parser


# -- entry points -----------------------------------------------------


def _configure(args: argparse.Namespace) -> None:
    if args.max_tower is not None:
        ConfigManager.override(max_tower=args.max_tower)
    settings = get_settings()
    setup_logging(args.log_level or settings.log_level, args.log_json or settings.log_json)


def _exit_code(error: DomainException) -> int:
    if isinstance(error, (SizeLimitExceeded, CeilingExceeded)):
        return EXIT_CAP
    if isinstance(error, PropertyViolation):
        return EXIT_PROPERTY
    return EXIT_ERROR


def run_command(argv: Sequence[str]) -> Tuple[int, str, str]:
    """Run one command line.

    Returns:
        (exit code, stdout text, stderr text)
    """
    out, err = io.StringIO(), io.StringIO()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = build_parser().parse_args(list(argv))
    except SystemExit as e:
        return (EXIT_OK if e.code in (0, None) else EXIT_ERROR), out.getvalue(), err.getvalue()

    try:
        _configure(args)
        outcome = args.handler(args)
    except DomainException as e:
        return _report(e, args.json, out, err)
    except ValueError as e:
        return _report(ValidationError(str(e)), args.json, out, err)
    finally:
        if args.max_tower is not None:
            ConfigManager.reset()

    if args.json:
        out.write(dumps(outcome.payload))
    else:
        out.writelines(line + "\n" for line in outcome.lines)
    if outcome.failure is not None:
        err.write(str(outcome.failure) + "\n")
        return EXIT_PROPERTY, out.getvalue(), err.getvalue()
    return EXIT_OK, out.getvalue(), err.getvalue()


def _report(
    error: DomainException, as_json: bool, out: io.StringIO, err: io.StringIO
) -> Tuple[int, str, str]:
    logger.debug("command_failed", code=error.code, message=error.message)
    if as_json:
        out.write(dumps(encode_error(error)))
    err.write(str(error) + "\n")
    return _exit_code(error), out.getvalue(), err.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Console entry point."""
    code, out, err = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
