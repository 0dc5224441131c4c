"""
Command-line interface for np-naive-bayes

Train, apply and evaluate Neyman-Pearson naive Bayes classifiers on CSV
data, run the simulation harness and verify the threshold theory.
"""

import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Any, Callable, List, Optional

import click
import numpy as np
from rich.console import Console
from rich.logging import RichHandler

from . import __version__
from .config import (
    AppConfig,
    BandwidthRule,
    KernelKind,
    NPConfig,
    ScreeningMethod,
    SimSettings,
    ThresholdRule,
    Variant,
)
from .core import empirical_errors, load_model, save_model, train
from .data import read_feature_csv, read_labeled_csv, write_predictions
from .errors import DataValidationError, InfeasibleGuaranteeError, NPError, TheoryMismatchError
from .numerics import CountConvention, minimal_m3
from .numerics.verification import run_all
from .sim import Example, SimSpec, run_mc, screening_table, write_report
from .ui.console import ResultsView

logger = logging.getLogger(__name__)

USAGE_EXIT = 1

OPEN_UNIT = click.FloatRange(0.0, 1.0, min_open=True, max_open=True)
CLOSED_UNIT = click.FloatRange(0.0, 1.0)


class NPGroup(click.Group):
    """Click group whose usage errors exit with status 1"""

    def main(self, *args: Any, standalone_mode: bool = True, **kwargs: Any) -> Any:
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as e:
            if not standalone_mode:
                raise
            e.show()
            sys.exit(USAGE_EXIT)
        except click.ClickException as e:
            if not standalone_mode:
                raise
            e.show()
            sys.exit(e.exit_code)
        except click.Abort:
            if not standalone_mode:
                raise
            click.echo("Aborted!", err=True)
            sys.exit(USAGE_EXIT)
        if standalone_mode:
            sys.exit(rv if isinstance(rv, int) else 0)
        return rv


def setup_logging(level: str, console: Console) -> None:
    """Route library logging through rich"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False, rich_tracebacks=True)],
        force=True,
    )


def handle_errors(func: Callable) -> Callable:
    """Report NPError subclasses and exit with their exit code"""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except NPError as e:
            ctx = click.get_current_context()
            console: Console = ctx.obj["console"]
            console.print(f"[red]x {e}[/red]")
            issues = getattr(e, "issues", None) or []
            for issue in issues[1:10]:
                console.print(f"[dim]  {issue}[/dim]")
            sys.exit(e.exit_code)

    return wrapper


@click.group(cls=NPGroup)
@click.version_option(version=__version__)
@click.option(
    "--config",
    "-c",
    type=click.Path(exists=True, path_type=Path),
    help="Path to a YAML or TOML configuration file",
)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
    default=None,
    help="Set logging level",
)
@click.pass_context
def cli(ctx, config: Optional[Path], log_level: Optional[str]):
    """np-nb - Neyman-Pearson naive Bayes classification"""
    ctx.ensure_object(dict)

    # If no config file specified, look for default config.yaml
    if config is None:
        config_path = Path("config.yaml")
        if not config_path.exists():
            config_path = None
    else:
        config_path = config

    console = Console()
    try:
        app_config = AppConfig.load(config_path)
    except NPError as e:
        console.print(f"[red]x {e}[/red]")
        sys.exit(e.exit_code)
    if log_level:
        app_config.log_level = log_level
    setup_logging(app_config.log_level, console)

    ctx.obj["config"] = app_config
    ctx.obj["console"] = console
    ctx.obj["view"] = ResultsView(console)


def np_options(func: Callable) -> Callable:
    """Options overriding the np section of the configuration"""
    options = [
        click.option("--alpha", type=OPEN_UNIT, help="Type I error bound"),
        click.option("--delta1", type=OPEN_UNIT, help="Screening failure probability"),
        click.option("--delta3", type=OPEN_UNIT, help="Threshold violation probability"),
        click.option("--q", "q_quantile", type=CLOSED_UNIT, help="Permutation quantile Q"),
        click.option("--variant", type=click.Choice([v.value for v in Variant]), help="Classifier variant"),
        click.option("--seed", type=click.IntRange(0, 2**64 - 1), help="Random seed"),
        click.option(
            "--threshold-rule",
            type=click.Choice([r.value for r in ThresholdRule]),
            help="Order-statistic rank rule",
        ),
        click.option("--kernel", type=click.Choice([k.value for k in KernelKind]), help="KDE kernel"),
        click.option(
            "--bandwidth",
            "bandwidth_rule",
            type=click.Choice([b.value for b in BandwidthRule]),
            help="KDE bandwidth rule",
        ),
        click.option("--permutations", type=click.IntRange(min=1), help="Permutations averaged for the cutoff"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _np_config(config: AppConfig, **flags: Any):
    variant = flags.pop("variant", None)
    for key, enum_cls in (
        ("threshold_rule", ThresholdRule),
        ("kernel", KernelKind),
        ("bandwidth_rule", BandwidthRule),
    ):
        if flags.get(key) is not None:
            flags[key] = enum_cls(flags[key])
    cfg = config.np.with_overrides(**flags)
    return cfg.with_variant(Variant(variant)) if variant else cfg


@cli.command(name="train")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, path_type=Path), help="Training CSV")
@click.option("--label-col", required=True, help="Name of the label column")
@click.option("--class0-value", required=True, help="Label value of class 0 (the controlled class)")
@click.option("--class1-value", default=None, help="Label value of class 1 (default: every other value)")
@np_options
@click.option("--swap-classes/--no-swap-classes", default=None, help="Control the type II error instead")
@click.option("--allow-infeasible", is_flag=True, help="Write the model even without the type I guarantee")
@click.option("--out", "-o", type=click.Path(path_type=Path), default=Path("model.json"), show_default=True)
@click.pass_context
@handle_errors
def train_cmd(ctx, data_path: Path, label_col: str, class0_value: str, class1_value: Optional[str],
              swap_classes: Optional[bool], allow_infeasible: bool, out: Path, **flags):
    """Train a classifier on a labeled CSV"""
    config: AppConfig = ctx.obj["config"]
    view: ResultsView = ctx.obj["view"]
    cfg = _np_config(config, swap_classes=swap_classes, **flags)

    data = read_labeled_csv(data_path, label_col, class0_value, class1_value)
    clf = train(data, cfg)
    view.show_classifier(clf)

    if not clf.feasible and not allow_infeasible:
        raise InfeasibleGuaranteeError(clf.m3, minimal_m3(clf.alpha, clf.delta3))
    save_model(clf, out)
    ctx.obj["console"].print(f"[green]+ Model saved to {out}[/green]")


@cli.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--out", "-o", type=click.Path(path_type=Path), default=Path("predictions.csv"), show_default=True)
@click.pass_context
@handle_errors
def predict(ctx, model_path: Path, data_path: Path, out: Path):
    """Score and classify the rows of a CSV"""
    clf = load_model(model_path)
    X, index = read_feature_csv(data_path, clf.feature_names)
    if not np.isfinite(X).all():
        rows = sorted(set(np.nonzero(~np.isfinite(X))[0].tolist()))
        raise DataValidationError(f"Non-finite feature values in {len(rows)} row(s), first at row {rows[0]}")

    scores = clf.scores(X)
    predictions = clf.predict_many(X)
    write_predictions(out, index, scores, predictions)
    ctx.obj["console"].print(
        f"[green]+ {len(predictions)} predictions written to {out}[/green] "
        f"[dim]({int(predictions.sum())} classified as 1)[/dim]"
    )


@cli.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--label-col", required=True)
@click.option("--class0-value", required=True)
@click.option("--class1-value", default=None)
@click.pass_context
@handle_errors
def evaluate(ctx, model_path: Path, data_path: Path, label_col: str, class0_value: str, class1_value: Optional[str]):
    """Empirical type I/II errors of a model on a labeled CSV"""
    view: ResultsView = ctx.obj["view"]
    clf = load_model(model_path)
    test = read_labeled_csv(data_path, label_col, class0_value, class1_value, feature_cols=clf.feature_names)
    if not np.isfinite(test.features).all():
        raise DataValidationError("Non-finite feature values in the evaluation data")

    view.show_classifier(clf, title="Model")
    r0, r1 = empirical_errors(clf, test)
    view.show_errors(r0, r1, clf.alpha)


def _parse_example(ctx, param, value: Optional[str]) -> Optional[Example]:
    if value is None:
        return None
    try:
        return Example.from_id(value)
    except ValueError:
        raise click.BadParameter(f"unknown example '{value}'; use 1, 2, {Example.EX1_MEAN_SHIFT.value} or {Example.EX2_MIXTURE.value}")


def _sim_settings(config: AppConfig, **overrides: Any) -> SimSettings:
    values = {
        "reps": config.sim.reps,
        "test_per_class": config.sim.test_per_class,
        "threads": config.sim.threads,
        "kde_type1_draws": config.sim.kde_type1_draws,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    return SimSettings(**values)


@cli.command()
@click.option("--example", required=True, callback=_parse_example, help="Design: 1 (mean shift) or 2 (mixture)")
@click.option("--d", "d", required=True, type=click.IntRange(min=10), help="Dimension")
@click.option("--m", "m", required=True, type=click.IntRange(min=1), help="Class-0 training size")
@click.option("--n", "n", required=True, type=click.IntRange(min=1), help="Class-1 training size")
@click.option("--reps", type=click.IntRange(min=1), help="Replications")
@click.option("--test-per-class", type=click.IntRange(min=1), help="Test points per class")
@click.option("--threads", type=click.IntRange(min=1), help="Concurrent replications")
@click.option("--kde-draws", "kde_type1_draws", type=click.IntRange(min=1), help="Draws for KDE population R0")
@click.option("--oracle-draws", type=click.IntRange(min=0), default=0, help="Monte Carlo oracle draws (mixture design)")
@np_options
@click.option("--out", "-o", type=click.Path(path_type=Path), default=Path("sim-out"), show_default=True)
@click.pass_context
@handle_errors
def simulate(ctx, example: Example, d: int, m: int, n: int, reps: Optional[int], test_per_class: Optional[int],
             threads: Optional[int], kde_type1_draws: Optional[int], oracle_draws: int, out: Path, **flags):
    """Monte Carlo replications of a synthetic design"""
    config: AppConfig = ctx.obj["config"]
    view: ResultsView = ctx.obj["view"]
    seed = flags.pop("seed", None)
    cfg = _np_config(config, **flags)
    settings = _sim_settings(
        config, reps=reps, test_per_class=test_per_class, threads=threads, kde_type1_draws=kde_type1_draws
    )
    spec = SimSpec.from_settings(
        example, d, m, n, cfg, settings, base_seed=cfg.seed if seed is None else seed, oracle_draws=oracle_draws
    )

    with ctx.obj["console"].status(f"Running {spec.reps} replications..."):
        report = run_mc(spec, threads=settings.threads)
    view.show_report(report)
    paths = write_report(report, out)
    ctx.obj["console"].print(f"[green]+ Report written to {paths['report']}[/green]")


@cli.command(name="screening-table")
@click.option("--example", required=True, callback=_parse_example)
@click.option("--ds", default="10,100,1000", show_default=True, help="Comma-separated dimensions")
@click.option("--method", type=click.Choice(["dstat", "tstat"]), default="dstat", show_default=True)
@click.option("--m", "m", type=click.IntRange(min=8), default=400, show_default=True)
@click.option("--n", "n", type=click.IntRange(min=4), default=400, show_default=True)
@click.option("--q", "q_quantile", type=CLOSED_UNIT, default=0.95, show_default=True)
@click.option("--reps", type=click.IntRange(min=1), help="Replications")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), help="Concurrent replications")
@click.pass_context
@handle_errors
def screening_table_cmd(ctx, example: Example, ds: str, method: str, m: int, n: int, q_quantile: float,
                        reps: Optional[int], seed: int, threads: Optional[int]):
    """Selected / missed / false-positive counts of marginal screening"""
    config: AppConfig = ctx.obj["config"]
    try:
        dims: List[int] = [int(part) for part in ds.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"--ds must be comma-separated integers, got '{ds}'")
    if not dims or min(dims) < 10:
        raise click.BadParameter("--ds needs dimensions >= 10")
    settings = _sim_settings(config, reps=reps, threads=threads)

    rows = screening_table(
        example,
        dims,
        ScreeningMethod(method),
        m=m,
        n=n,
        q=q_quantile,
        reps=settings.reps,
        base_seed=seed,
        threads=settings.threads,
        cfg=config.np,
    )
    ctx.obj["view"].show_screening_table(rows)


@cli.command(name="verify-theory")
@click.option(
    "--convention",
    type=click.Choice([c.value for c in CountConvention]),
    default=CountConvention.ALL_COMBOS.value,
    show_default=True,
    help="How empty rank sets enter the k_chern/k_min comparison",
)
@click.option("--grid-small", is_flag=True, help="Reduced k_min and duality grids")
@click.pass_context
@handle_errors
def verify_theory(ctx, convention: str, grid_small: bool):
    """Recompute the threshold-theory checks"""
    view: ResultsView = ctx.obj["view"]
    results = run_all(CountConvention(convention), small=grid_small)
    view.show_chern_counts(results[0])
    view.show_checks(results)
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise TheoryMismatchError(f"Theory verification failed: {', '.join(failed)}")
    ctx.obj["console"].print("[green]+ All theory checks passed[/green]")


@cli.command(name="config-info")
@click.pass_context
def config_info(ctx):
    """Display current configuration"""
    ctx.obj["view"].show_config(ctx.obj["config"])


@cli.command(name="init-config")
@click.option(
    "--output",
    "-o",
    type=click.Path(path_type=Path),
    help="Output file for config (default: config.yaml)",
)
@click.pass_context
def init_config(ctx, output: Optional[Path]):
    """Initialize a default configuration file"""
    console: Console = ctx.obj["console"]

    if output is None:
        output = Path("config.yaml")

    if output.exists():
        if not click.confirm(f"Config file {output} already exists. Overwrite?"):
            return

    config = AppConfig(np=NPConfig(), sim=SimSettings())
    config.save(output)

    console.print(f"[green]+ Configuration saved to {output}[/green]")
    console.print("[dim]Edit the file to set alpha, delta3 and the classifier variant[/dim]")


def main():
    """Main entry point"""
    cli()


if __name__ == "__main__":
    main()
