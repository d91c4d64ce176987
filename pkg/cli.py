#! /usr/bin/env python3
"""
Command-line entry point: compute family tables and series, run the exact and
numeric verification suites, certify root locations and evaluate MZVs.

Exit status is 0 when every check passes, 1 when a check fails or is
inconclusive, and 2 on usage errors.
"""

import argparse
import logging
import re
import sys
from fractions import Fraction
from typing import List, Optional

from rich.console import Console
from rich.traceback import install

import config
from cache import TableCache
from error_handler import (
    ArgumentError,
    ErrorHandler,
    InadmissibleIndex,
    IndexSyntaxError,
    NotInT3,
    PoleAtSample,
    PolyzetaError,
    ToleranceTooTight,
)
from families import (
    DEFAULT_METHOD,
    MIN_NMAX,
    RECURRENCE_MIN_NMAX,
    Family,
    FamilyTable,
    Method,
    RecurrenceCheck,
    family_table,
    verify_eliminated_recurrences,
)
from formatters import ReportFormatter
from models import CdhBatch, RecurrenceBatch, ResidualBatch, SeriesRecord
from mzv import Identity, mzv_truncated, parse_index, verify_identity
from rings import ZSeries, as_rational, rational_text
from series import (
    ODE_OPERATORS,
    c_product_limit,
    cdh_generating_check,
    lemma5_report,
    ode_report,
    reproduce_a_series,
    sixth_order_report,
)
from zeros import certify_family, default_nmin

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

USAGE_ERRORS = (ArgumentError, IndexSyntaxError, InadmissibleIndex, NotInT3, PoleAtSample)

LEMMA5_ALPHAS = ["0", "1/3", "1/2", "1", "2", "-1", "-5/2", "3/4", "5", "-1/3"]
CDH_SAMPLES = [("1", "1/2"), ("1/3", "2/5"), ("2", "1/7"), ("1/2", "3/4"), ("-5/2", "1/3")]
CDH_GAMMAS = ["1", "1/2", "3"]

EXACT_CHECKS = ["ode", "sixth", "aseries", "cproduct", "lemma5", "cdh", "recurrences"]
NUMERIC_CHECKS = [i.value for i in Identity]


# argparse only recognises -5 and -0.5 as negative numbers, not -5/2
NEGATIVE_NUMBER = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = NEGATIVE_NUMBER


def _at_least(value: int, minimum: int, flag: str) -> None:
    if value < minimum:
        raise ArgumentError(f"{flag} must be at least {minimum}, got {value}")


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except ArgumentError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of tables")
    common.add_argument("--cache-dir", default=None, help=f"table cache (default ${config.CACHE_DIR_ENV} "
                                                         f"or {config.DEFAULT_CACHE_DIR})")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = _Parser(prog="polyzeta", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    families = [f.value for f in Family]

    p = sub.add_parser("family", parents=[common], help="tabulate a polynomial family")
    p.add_argument("family", choices=families)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--method", choices=[m.value for m in Method])

    p = sub.add_parser("series", parents=[common], help="truncated generating series of a family")
    p.add_argument("family", choices=families)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--alpha", type=_rational)

    p = sub.add_parser("verify", parents=[common], help="run a verification")
    p.add_argument("check", choices=NUMERIC_CHECKS + EXACT_CHECKS)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--N", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--J", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--t0", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--which", choices=[r.value for r in RecurrenceCheck])

    p = sub.add_parser("zeros", parents=[common], help="certify roots in x = t^3 lie in (-inf, 0]")
    p.add_argument("family", choices=families)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--alpha", type=_rational)

    p = sub.add_parser("mzv", parents=[common], help="truncated multiple zeta value")
    p.add_argument("index", help="e.g. '2,1', '2~,1' or '{2,1}^3'")
    p.add_argument("--N", type=int, required=True)

    return parser


class PolyzetaCLI:
    def __init__(self, args: argparse.Namespace, console: Optional[Console] = None):
        self.args = args
        self.console = console or Console(markup=True, highlight=True)
        self.formatter = ReportFormatter(self.console)
        self.error_handler = ErrorHandler(Console(stderr=True))
        self.cache = TableCache(config.cache_dir(args.cache_dir))

    def emit(self, model) -> None:
        print(model.model_dump_json(by_alias=True))

    def table(self, family: Family, nmax: int, alpha: Optional[Fraction] = None,
              method: Optional[Method] = None) -> FamilyTable:
        """Cached for the default method only; every method yields the same table."""
        if method is not None and method is not DEFAULT_METHOD[family]:
            return family_table(family, nmax, alpha, method)
        return self.cache.get_or_compute(family, alpha, nmax, lambda: family_table(family, nmax, alpha))

    def run(self) -> int:
        handler = getattr(self, f"cmd_{self.args.command}")
        logger.debug("running %s with cache at %s", self.args.command, self.cache.directory)
        try:
            return handler()
        except ToleranceTooTight as e:
            self.error_handler.handle_error(e)
            return EXIT_FAIL
        except USAGE_ERRORS as e:
            self.error_handler.handle_error(e)
            return EXIT_USAGE
        except PolyzetaError as e:
            self.error_handler.handle_error(e)
            return EXIT_FAIL

    def cmd_family(self) -> int:
        a = self.args
        method = None if a.method is None else Method(a.method)
        family = Family(a.family)
        _at_least(a.n, MIN_NMAX[family], "--n")
        table = self.table(family, a.n, a.alpha, method)
        if a.json:
            self.emit(table.to_record())
        else:
            self.formatter.format_table(table)
        return EXIT_PASS

    def cmd_series(self) -> int:
        a = self.args
        _at_least(a.order, 1, "--order")
        family = Family(a.family)
        table = self.table(family, max(a.order, 2), a.alpha)
        series = ZSeries(table.entries[: a.order + 1], a.order)
        if a.json:
            self.emit(SeriesRecord(
                family=family.value,
                alpha=None if a.alpha is None else rational_text(a.alpha),
                order=series.order,
                coefficients=[c.to_strings() for c in series.coeffs],
            ))
        else:
            self.formatter.format_series(family.value, series)
        return EXIT_PASS

    def cmd_mzv(self) -> int:
        _at_least(self.args.N, 1, "--N")
        value = mzv_truncated(parse_index(self.args.index), self.args.N)
        if self.args.json:
            self.emit(value)
        else:
            self.formatter.format_mzv(value)
        return EXIT_PASS

    def cmd_zeros(self) -> int:
        a = self.args
        family = Family(a.family)
        if family is not Family.APRIME:
            _at_least(a.nmax, default_nmin(family), "--nmax")
        table = None if family is Family.APRIME else self.table(family, a.nmax, a.alpha)
        batch = certify_family(family, a.nmax, a.alpha, table=table)
        if a.json:
            self.emit(batch)
        else:
            self.formatter.format_certificates(batch)
        return EXIT_PASS if batch.passed else EXIT_FAIL

    def cmd_verify(self) -> int:
        check = self.args.check
        if check in NUMERIC_CHECKS:
            return self._verify_numeric(Identity(check))
        return getattr(self, f"_verify_{check}")()

    def _verify_numeric(self, identity: Identity) -> int:
        a = self.args
        _at_least(a.l, 1, "--l")
        for flag, value in (("--N", a.N), ("--J", a.J)):
            if value is not None:
                _at_least(value, 1, flag)
        report = verify_identity(identity, a.l, a.N, a.tol, a.J)
        if a.json:
            self.emit(report)
        else:
            self.formatter.format_numeric(report)
        return EXIT_PASS if report.passed else EXIT_FAIL

    def _residual_batch(self, name: str, reports) -> int:
        batch = ResidualBatch(name=name, reports=list(reports), passed=all(r.zero for r in reports))
        if self.args.json:
            self.emit(batch)
        else:
            self.formatter.format_batch(batch)
        return EXIT_PASS if batch.passed else EXIT_FAIL

    def _order(self, default: int) -> int:
        order = default if self.args.order is None else self.args.order
        _at_least(order, 1, "--order")
        return order

    def _verify_ode(self) -> int:
        order = self._order(10)
        return self._residual_batch("ode", [ode_report(f, order) for f in ODE_OPERATORS])

    def _verify_sixth(self) -> int:
        return self._residual_batch("sixth", [sixth_order_report(self._order(12))])

    def _verify_aseries(self) -> int:
        return self._residual_batch("aseries", [reproduce_a_series()])

    def _verify_cproduct(self) -> int:
        _at_least(self.args.nmax, 1, "--nmax")
        return self._residual_batch("cproduct", [c_product_limit(self.args.nmax)])

    def _verify_lemma5(self) -> int:
        order = self._order(20)
        alphas = LEMMA5_ALPHAS if self.args.alpha is None else [self.args.alpha]
        return self._residual_batch("lemma5", [lemma5_report(alpha, order) for alpha in alphas])

    def _verify_cdh(self) -> int:
        a = self.args
        order = self._order(8)
        if a.alpha is not None or a.t0 is not None:
            if a.alpha is None or a.t0 is None:
                raise ArgumentError("cdh needs both --alpha and --t0, or neither")
            samples = [(a.alpha, a.t0)]
        else:
            samples = CDH_SAMPLES
        gammas = [None] + (CDH_GAMMAS if a.gamma is None else [a.gamma])
        reports = [cdh_generating_check(alpha, t0, order, gamma) for alpha, t0 in samples for gamma in gammas]
        batch = CdhBatch(name="cdh", reports=reports, passed=all(r.zero for r in reports))
        if a.json:
            self.emit(batch)
        else:
            self.formatter.format_cdh(batch.reports)
        return EXIT_PASS if batch.passed else EXIT_FAIL

    def _verify_recurrences(self) -> int:
        a = self.args
        _at_least(a.nmax, RECURRENCE_MIN_NMAX, "--nmax")
        which = list(RecurrenceCheck) if a.which is None else [RecurrenceCheck(a.which)]
        reports = [verify_eliminated_recurrences(w, a.nmax) for w in which]
        batch = RecurrenceBatch(reports=reports, passed=all(r.all_zero for r in reports))
        if a.json:
            self.emit(batch)
        else:
            for report in reports:
                self.formatter.format_recurrences(report)
        return EXIT_PASS if batch.passed else EXIT_FAIL


def dispatch(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    config.setup_logging(args.log_level)
    return PolyzetaCLI(args).run()


def main():
    """Entry point for the polyzeta command."""
    install()
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
