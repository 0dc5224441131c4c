"""
Monte Carlo harness

Each replication draws a fresh training sample, trains an NP classifier,
and records its population and test-set errors. Replication seeds come
from SeedSequence spawn keys, so a replication's result does not depend on
when or where it runs.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from ..config import EstimatorKind, NPConfig, ScreeningMethod, SimSettings
from ..core import NPClassifier, analytic_type1_error, empirical_errors, mc_type1_error, train
from ..data import LabeledDataset, make_split
from ..data.split import SCREEN_STREAM, derived_seed
from ..errors import ConfigError
from ..screening import screen
from .executor import ReplicationExecutor, ReplicationResult
from .generators import SIGNAL, SIGNAL_DIMS, Example, generate, sampler
from .oracle import oracle_risks
from .report import McReport, OracleSummary, ReplicationRecord, SummaryStat, aggregate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimSpec:
    """One simulation scenario"""
    example: Example
    d: int
    m: int
    n: int
    reps: int = 1000
    test_per_class: int = 1000
    cfg: NPConfig = field(default_factory=NPConfig)
    base_seed: int = 0
    kde_type1_draws: int = 100_000
    oracle_draws: int = 0

    def __post_init__(self) -> None:
        if self.d < SIGNAL_DIMS:
            raise ConfigError(f"d must be >= {SIGNAL_DIMS}, got {self.d}")
        if min(self.m, self.n, self.reps, self.test_per_class, self.kde_type1_draws) < 1:
            raise ConfigError("m, n, reps, test_per_class and kde_type1_draws must be positive")
        if self.base_seed < 0:
            raise ConfigError(f"base_seed must be nonnegative, got {self.base_seed}")
        if self.cfg.swap_classes:
            raise ConfigError("simulations evaluate the class-0 guarantee; swap_classes is not supported")

    @classmethod
    def from_settings(cls, example: Example, d: int, m: int, n: int, cfg: NPConfig, settings: SimSettings, **kwargs) -> "SimSpec":
        return cls(
            example=example,
            d=d,
            m=m,
            n=n,
            reps=settings.reps,
            test_per_class=settings.test_per_class,
            cfg=cfg,
            kde_type1_draws=settings.kde_type1_draws,
            **kwargs,
        )


def replication_rng(base_seed: int, rep: int) -> np.random.Generator:
    """Generator of replication rep; equal to SeedSequence(base_seed).spawn(...)[rep]"""
    return np.random.default_rng(np.random.SeedSequence(base_seed, spawn_key=(rep,)))


def _draw_training(spec: SimSpec, rng: np.random.Generator) -> LabeledDataset:
    class0 = generate(spec.example, spec.d, spec.m, 0, rng)
    class1 = generate(spec.example, spec.d, spec.n, 1, rng)
    return LabeledDataset.from_classes(class0, class1)


def population_type1_error(spec: SimSpec, clf: NPClassifier, rng: np.random.Generator, threshold: Optional[float] = None) -> float:
    """Closed form for affine scores (class 0 is N(0, I) in every design), Monte Carlo otherwise"""
    if clf.config.estimator is EstimatorKind.PARAMETRIC:
        return analytic_type1_error(clf, 0.0, 1.0, threshold)
    return mc_type1_error(clf, sampler(spec.example, spec.d, 0), spec.kde_type1_draws, rng, threshold)


def run_replication(spec: SimSpec, rep: int) -> ReplicationRecord:
    """Train and evaluate one replication"""
    rng = replication_rng(spec.base_seed, rep)
    data = _draw_training(spec, rng)
    seed = int(rng.integers(2**63))
    clf = train(data, spec.cfg.with_overrides(seed=seed))

    test = LabeledDataset.from_classes(
        generate(spec.example, spec.d, spec.test_per_class, 0, rng),
        generate(spec.example, spec.d, spec.test_per_class, 1, rng),
    )
    r0_test, r1_test = empirical_errors(clf, test)
    # common random numbers for the guaranteed and the classical threshold
    eval_state = rng.bit_generator.state
    r0_pop = population_type1_error(spec, clf, rng)
    rng.bit_generator.state = eval_state
    r0_classical = population_type1_error(spec, clf, rng, clf.classical_threshold())

    screened = clf.screening
    return ReplicationRecord(
        rep=rep,
        variant=clf.variant.value,
        d=spec.d,
        m=spec.m,
        n=spec.n,
        r0_analytic=r0_pop,
        r0_test=r0_test,
        r1_test=r1_test,
        n_selected=int(clf.selected.size),
        n_missed=screened.missed(SIGNAL) if screened else None,
        n_false_pos=screened.false_positives(SIGNAL) if screened else None,
        seed=seed,
        r0_classical=r0_classical,
        k_used=clf.k_used,
        feasible=clf.feasible,
    )


def _failures(results: Sequence[ReplicationResult]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for result in results:
        if not result.success:
            counts[result.error_type or "Exception"] = counts.get(result.error_type or "Exception", 0) + 1
    return counts


def run_mc(spec: SimSpec, threads: int = 1, reps: Optional[Sequence[int]] = None) -> McReport:
    """
    Run every replication of a scenario and aggregate

    Args:
        spec: Scenario
        threads: Concurrent replications
        reps: Replication numbers to run (default 0..spec.reps-1)

    Returns:
        McReport; failed replications are excluded and counted by error type
    """
    rep_ids = list(range(spec.reps)) if reps is None else list(reps)
    executor = ReplicationExecutor(max_concurrency=threads)
    jobs = [(lambda rep=rep: run_replication(spec, rep)) for rep in rep_ids]
    results = executor.run(jobs)
    results = [r.model_copy(update={"rep": rep_ids[r.rep]}) for r in results]

    records = [r.result for r in results if r.success]
    stats = executor.get_execution_stats()
    logger.info(
        "%s %s d=%d m=%d n=%d: %d/%d replications ok (%.3fs each)",
        spec.example.value,
        spec.cfg.variant.value,
        spec.d,
        spec.m,
        spec.n,
        stats["successful_executions"],
        stats["total_executions"],
        stats["average_execution_time"],
    )

    oracle = None
    if spec.example is Example.EX1_MEAN_SHIFT or spec.oracle_draws > 0:
        risks = oracle_risks(spec.example, spec.cfg.alpha, draws=max(spec.oracle_draws, 1), seed=spec.base_seed)
        oracle = OracleSummary(r0_star=risks.r0_star, r1_star=risks.r1_star)

    return aggregate(
        records,
        example=spec.example.value,
        variant=spec.cfg.variant.value,
        d=spec.d,
        m=spec.m,
        n=spec.n,
        reps=len(rep_ids),
        alpha=spec.cfg.alpha,
        delta3=spec.cfg.delta3,
        failure_types=_failures(results),
        oracle=oracle,
    )


class ScreeningRow(BaseModel):
    """One row of a screening-performance table"""
    example: str
    method: str
    d: int
    selected: SummaryStat
    missed: SummaryStat
    false_positives: SummaryStat
    n_failed: int = 0


def _screen_once(example: Example, d: int, m: int, n: int, cfg: NPConfig, base_seed: int, rep: int) -> Tuple[int, int, int]:
    rng = replication_rng(base_seed, rep)
    data = _draw_training(SimSpec(example, d, m, n, reps=1, cfg=cfg), rng)
    seed = int(rng.integers(2**63))
    run_cfg = cfg.with_overrides(seed=seed)
    plan = make_split(data, run_cfg)
    result = screen(
        data.rows(plan.s0_1),
        data.rows(plan.s1_1),
        run_cfg,
        seed=derived_seed(seed, SCREEN_STREAM),
        allow_empty=True,
    )
    return result.n_selected, result.missed(SIGNAL), result.false_positives(SIGNAL)


def screening_table(
    example: Example,
    ds: Sequence[int],
    method: ScreeningMethod,
    m: int = 400,
    n: int = 400,
    q: float = 0.95,
    reps: int = 1000,
    base_seed: int = 0,
    threads: int = 1,
    cfg: Optional[NPConfig] = None,
) -> List[ScreeningRow]:
    """
    Mean (sd) of selected, missed and false-positive counts for each d

    Only the split and the screening step run in each replication.
    """
    if method is ScreeningMethod.NONE:
        raise ConfigError("screening_table needs a screening method")
    base = cfg or NPConfig()
    cfg = base.with_overrides(screening=method, q_quantile=q)
    rows: List[ScreeningRow] = []
    for d in ds:
        executor = ReplicationExecutor(max_concurrency=threads)
        jobs = [(lambda rep=rep, d=d: _screen_once(example, d, m, n, cfg, base_seed, rep)) for rep in range(reps)]
        results = executor.run(jobs)
        ok = [r.result for r in results if r.success]
        rows.append(
            ScreeningRow(
                example=example.value,
                method=method.value,
                d=d,
                selected=SummaryStat.of([r[0] for r in ok]),
                missed=SummaryStat.of([r[1] for r in ok]),
                false_positives=SummaryStat.of([r[2] for r in ok]),
                n_failed=len(results) - len(ok),
            )
        )
        logger.info("screening %s d=%d: mean selected %.2f", method.value, d, rows[-1].selected.mean)
    return rows
