"""
Console rendering for np-naive-bayes

Turns classifiers, reports and check results into rich tables and panels.
"""

import math
from typing import Iterable, Optional, Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..config import AppConfig
from ..core import NPClassifier
from ..numerics import minimal_m3
from ..numerics.verification import CheckResult
from ..sim import McReport, ScreeningRow
from ..sim.report import SummaryStat


def _fmt(value: Optional[float], digits: int = 4) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "[dim]undefined[/dim]"
    return f"{value:.{digits}f}"


def _stat(stat: Optional[SummaryStat], digits: int = 4) -> str:
    if stat is None or stat.count == 0:
        return "[dim]n/a[/dim]"
    return f"{stat.mean:.{digits}f} ± {stat.se:.{digits}f}"


class ResultsView:
    """Renders command results on a rich console"""

    def __init__(self, console: Console):
        self.console = console

    def show_classifier(self, clf: NPClassifier, title: str = "Trained classifier") -> None:
        """Threshold summary of a trained or loaded classifier"""
        table = Table(title=title)
        table.add_column("Setting", style="bold")
        table.add_column("Value")

        table.add_row("Variant", clf.variant.value)
        table.add_row("Threshold rule", clf.threshold_rule.value)
        table.add_row("alpha / delta3", f"{clf.alpha} / {clf.delta3}")
        table.add_row("m3", str(clf.m3))
        table.add_row("k used", str(clf.k_used))
        table.add_row("c_hat", f"{clf.c_hat:.6g}")
        table.add_row("Selected features", f"{clf.selected.size} of {clf.d}")
        if clf.feasible:
            table.add_row("Guarantee", "[green]feasible[/green]")
        else:
            needed = minimal_m3(clf.alpha, clf.delta3)
            table.add_row("Guarantee", f"[red]void[/red] (m3 >= {needed} is sufficient)")
        if clf.swapped:
            table.add_row("Class roles", "[yellow]swapped[/yellow]")
        self.console.print(table)

    def show_errors(self, r0: Optional[float], r1: Optional[float], alpha: float) -> None:
        table = Table(title="Empirical errors")
        table.add_column("Error", style="bold")
        table.add_column("Rate", justify="right")
        table.add_row("Type I (R0)", _fmt(r0))
        table.add_row("Type II (R1)", _fmt(r1))
        self.console.print(table)
        if r0 is not None and r0 > alpha:
            self.console.print(f"[yellow]Test-set type I error exceeds alpha={alpha}[/yellow]")

    def show_report(self, report: McReport) -> None:
        """Aggregate Monte Carlo results"""
        header = (
            f"[bold]{report.example}[/bold] {report.variant}  d={report.d} m={report.m} n={report.n}\n"
            f"[dim]{report.n_ok}/{report.reps} replications ok[/dim]"
        )
        self.console.print(Panel(header, border_style="blue"))

        table = Table(title="Errors (mean ± SE)")
        table.add_column("Quantity", style="bold")
        table.add_column("Value", justify="right")
        table.add_row("R0 population", _stat(report.r0_population))
        table.add_row("R0 test", _stat(report.r0_test))
        table.add_row("R1 test", _stat(report.r1_test))
        table.add_row("R0 classical quantile", _stat(report.r0_classical))
        status = "green" if report.within_guarantee else "red"
        table.add_row(
            "Violation rate",
            f"[{status}]{_fmt(report.violation_rate)}[/{status}] (bound {report.violation_bound:.4f})",
        )
        table.add_row("Violation rate, classical", _fmt(report.violation_rate_classical))
        if report.oracle is not None:
            table.add_row("Oracle (R0*, R1*)", f"({report.oracle.r0_star:.4f}, {report.oracle.r1_star:.4f})")
        self.console.print(table)

        if report.screening is not None:
            self.show_screening_summary(report.screening.selected, report.screening.missed, report.screening.false_positives)
        if report.failure_types:
            failures = ", ".join(f"{name}: {count}" for name, count in report.failure_types.items())
            self.console.print(f"[yellow]Failed replications: {failures}[/yellow]")

    def show_screening_summary(self, selected: SummaryStat, missed: SummaryStat, false_pos: SummaryStat) -> None:
        table = Table(title="Screening (mean (sd))")
        table.add_column("Selected", justify="right")
        table.add_column("Missed", justify="right")
        table.add_column("False positives", justify="right")
        table.add_row(*(f"{s.mean:.2f} ({s.sd:.2f})" for s in (selected, missed, false_pos)))
        self.console.print(table)

    def show_screening_table(self, rows: Sequence[ScreeningRow]) -> None:
        if not rows:
            return
        table = Table(title=f"Screening performance: {rows[0].example}, {rows[0].method}")
        table.add_column("d", justify="right", style="bold")
        table.add_column("Selected", justify="right")
        table.add_column("Missed", justify="right")
        table.add_column("False positives", justify="right")
        for row in rows:
            table.add_row(
                str(row.d),
                *(f"{s.mean:.2f} ({s.sd:.2f})" for s in (row.selected, row.missed, row.false_positives)),
            )
        self.console.print(table)

    def show_checks(self, results: Iterable[CheckResult]) -> None:
        """Theory verification outcomes"""
        table = Table(title="Theory verification")
        table.add_column("Check", style="bold")
        table.add_column("Result")
        table.add_column("Detail")
        for result in results:
            mark = "[green]pass[/green]" if result.passed else "[red]FAIL[/red]"
            table.add_row(result.name, mark, result.detail)
        self.console.print(table)

    def show_chern_counts(self, result: CheckResult) -> None:
        metrics = result.metrics
        table = Table(title=f"#{{k_chern < k_min}} ({metrics['convention']})")
        table.add_column("delta3", justify="right")
        table.add_column("count", justify="right")
        table.add_column("published", justify="right")
        for delta3, got, want in zip(metrics["delta3"], metrics["counts"], metrics["published"]):
            style = "" if got == want else "[yellow]"
            table.add_row(f"{delta3:.2f}", f"{style}{got}", str(want))
        self.console.print(table)

    def show_config(self, config: AppConfig) -> None:
        """Current configuration"""
        self.console.print(Panel.fit("Current Configuration", style="bold blue"))
        table = Table(show_header=False)
        table.add_column("Setting", style="bold")
        table.add_column("Value")
        table.add_row("Variant", config.np.variant.value)
        for key, value in config.np.to_dict().items():
            table.add_row(key, str(value))
        table.add_row("reps", str(config.sim.reps))
        table.add_row("test_per_class", str(config.sim.test_per_class))
        table.add_row("threads", str(config.sim.threads))
        table.add_row("kde_type1_draws", str(config.sim.kde_type1_draws))
        table.add_row("log_level", config.log_level)
        table.add_row("config_file", str(config.config_file) if config.config_file else "[dim]none[/dim]")
        self.console.print(table)
