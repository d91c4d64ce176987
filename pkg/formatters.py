from typing import Iterable

from rich.console import Console
from rich.markdown import Markdown
from rich.table import Table

from families import FamilyTable
from models import (
    CdhReport,
    CertificateBatch,
    MzvValue,
    NumericReport,
    RecurrenceReport,
    ResidualBatch,
    ResidualReport,
)
from rings import ZSeries


def _verdict(passed: bool) -> str:
    return "[bold green]pass[/bold green]" if passed else "[bold red]FAIL[/bold red]"


class ReportFormatter:
    """Human-readable rendering of every report; --json bypasses this entirely."""

    def __init__(self, console: Console):
        self.console = console

    def _heading(self, text: str) -> None:
        self.console.print(Markdown(f"# {text}"))

    def format_table(self, table: FamilyTable) -> None:
        title = table.family.value if table.alpha is None else f"{table.family.value} (alpha={table.alpha})"
        self._heading(f"{title}, n <= {table.nmax}")
        out = Table(show_header=True, header_style="bold cyan")
        out.add_column("n", justify="right")
        out.add_column("polynomial in t")
        for n, p in enumerate(table.entries):
            out.add_row(str(n), str(p))
        self.console.print(out)

    def format_series(self, name: str, series: ZSeries) -> None:
        self._heading(f"{name}(z;t) through z^{series.order}")
        self.console.print(str(series))

    def format_residuals(self, reports: Iterable[ResidualReport], title: str = "Residuals") -> None:
        self._heading(title)
        out = Table(show_header=True, header_style="bold cyan")
        for column in ("identity", "params", "order", "first nonzero", "result"):
            out.add_column(column)
        for r in reports:
            params = ", ".join(f"{k}={v}" for k, v in r.params.items())
            first = "-" if r.first_nonzero_order is None else str(r.first_nonzero_order)
            out.add_row(r.identity, params, str(r.order), first, _verdict(r.zero))
        self.console.print(out)

    def format_batch(self, batch: ResidualBatch) -> None:
        self.format_residuals(batch.reports, title=batch.name)
        self.console.print(f"Overall: {_verdict(batch.passed)}")

    def format_cdh(self, reports: Iterable[CdhReport]) -> None:
        self._heading("Continuous dual Hahn generating functions")
        out = Table(show_header=True, header_style="bold cyan")
        for column in ("identity", "params", "order", "samples", "result"):
            out.add_column(column)
        for r in reports:
            params = ", ".join(f"{k}={v}" for k, v in r.params.items())
            out.add_row(r.identity, params, str(r.order), str(r.samples), _verdict(r.zero))
        self.console.print(out)

    def format_recurrences(self, report: RecurrenceReport) -> None:
        self._heading(f"Recurrences for {report.which}, n <= {report.nmax}")
        forms = {}
        for row in report.rows:
            ok, total = forms.get(row.form, (0, 0))
            forms[row.form] = (ok + row.zero, total + 1)
        out = Table(show_header=True, header_style="bold cyan")
        for column in ("form", "zero residuals", "result"):
            out.add_column(column)
        for form, (ok, total) in forms.items():
            out.add_row(form, f"{ok}/{total}", _verdict(ok == total))
        self.console.print(out)
        failed = [f"{row.form} at n={row.n}" for row in report.rows if not row.zero]
        if failed:
            self.console.print(Markdown("**Nonzero:**\n" + "\n".join(f"- {f}" for f in failed)))

    def format_numeric(self, report: NumericReport) -> None:
        self._heading(f"{report.identity}, l={report.l}")
        out = Table(show_header=False)
        out.add_column("field", style="bold")
        out.add_column("value")
        out.add_row("value", f"{report.value:.15g}")
        out.add_row("reference", f"{report.reference:.15g}")
        out.add_row("difference", f"{report.difference:.3e}")
        out.add_row("N", str(report.N))
        out.add_row("tail estimate", f"{report.tail_estimate:.3e}")
        out.add_row("value tail", f"{report.value_tail:.3e}")
        out.add_row("reference tail", f"{report.reference_tail:.3e}")
        out.add_row("tolerance", f"{report.tolerance:.3e}")
        out.add_row("result", _verdict(report.passed))
        self.console.print(out)

    def format_mzv(self, value: MzvValue) -> None:
        self.console.print(
            f"zeta({value.index}) ~ {value.value:.15g}  (N={value.N}, tail ~ {value.tail_estimate:.3e})"
        )

    def format_certificates(self, batch: CertificateBatch) -> None:
        title = batch.family if batch.alpha is None else f"{batch.family} (alpha={batch.alpha})"
        self._heading(f"Roots in x = t^3 for {title}, n <= {batch.nmax}")
        out = Table(show_header=True, header_style="bold cyan")
        for column in ("n", "degree", "distinct", "in (-inf,0]", "at 0", "result", "witness"):
            out.add_column(column)
        for c in batch.certificates:
            witness = "" if not c.witness else f"({c.witness[0]}, {c.witness[1]}]"
            out.add_row(
                str(c.n), str(c.degree), str(c.degree_sqfree), str(c.roots_in_halfline),
                "yes" if c.root_at_zero else "no", _verdict(c.passed), witness,
            )
        self.console.print(out)
        self.console.print(f"Overall: {_verdict(batch.passed)}")
