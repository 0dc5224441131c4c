"""
Monte Carlo report: per-replication records and aggregate summaries
"""

import logging
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

RECORD_COLUMNS = [
    "rep",
    "variant",
    "d",
    "m",
    "n",
    "r0_analytic",
    "r0_test",
    "r1_test",
    "n_selected",
    "n_missed",
    "n_false_pos",
    "seed",
    "r0_classical",
    "k_used",
    "feasible",
]


class ReplicationRecord(BaseModel):
    """One replication; r0_analytic is the population type I error of the trained rule"""
    rep: int
    variant: str
    d: int
    m: int
    n: int
    r0_analytic: Optional[float] = None
    r0_test: Optional[float] = None
    r1_test: Optional[float] = None
    n_selected: int
    n_missed: Optional[int] = None
    n_false_pos: Optional[int] = None
    seed: int
    r0_classical: Optional[float] = None
    k_used: int = 0
    feasible: bool = True


class SummaryStat(BaseModel):
    mean: float
    sd: float
    se: float
    count: int

    @classmethod
    def of(cls, values: Sequence[float]) -> "SummaryStat":
        """Mean, sample sd and sd/sqrt(count)"""
        data = np.asarray(values, dtype=np.float64)
        if data.size == 0:
            return cls(mean=math.nan, sd=math.nan, se=math.nan, count=0)
        sd = float(data.std(ddof=1)) if data.size > 1 else 0.0
        return cls(mean=float(data.mean()), sd=sd, se=sd / math.sqrt(data.size), count=int(data.size))


class ScreeningSummary(BaseModel):
    selected: SummaryStat
    missed: SummaryStat
    false_positives: SummaryStat


class OracleSummary(BaseModel):
    r0_star: float
    r1_star: float


class McReport(BaseModel):
    """Aggregate over the successful replications of one scenario"""
    example: str
    variant: str
    d: int
    m: int
    n: int
    reps: int
    alpha: float
    delta3: float
    n_ok: int
    n_failed: int
    failure_types: Dict[str, int] = Field(default_factory=dict)
    r0_test: SummaryStat
    r1_test: SummaryStat
    r0_population: Optional[SummaryStat] = None
    r0_classical: Optional[SummaryStat] = None
    violation_rate: float
    violation_se: float
    violation_bound: float
    violation_rate_classical: Optional[float] = None
    screening: Optional[ScreeningSummary] = None
    oracle: Optional[OracleSummary] = None
    records: List[ReplicationRecord] = Field(default_factory=list, exclude=True)

    @property
    def within_guarantee(self) -> bool:
        """Violation rate at most delta3 plus three binomial standard errors"""
        return self.violation_rate <= self.violation_bound


def _present(values: Sequence[Optional[float]]) -> Optional[List[float]]:
    """All values when none is missing, else None"""
    if not values or any(v is None for v in values):
        return None
    return [float(v) for v in values]


def aggregate(
    records: Sequence[ReplicationRecord],
    *,
    example: str,
    variant: str,
    d: int,
    m: int,
    n: int,
    reps: int,
    alpha: float,
    delta3: float,
    failure_types: Optional[Dict[str, int]] = None,
    oracle: Optional[OracleSummary] = None,
) -> McReport:
    """
    Summarise replication records

    The violation rate uses the population type I error when every record
    has one and falls back to the test-set error otherwise.
    """
    records = sorted(records, key=lambda r: r.rep)
    failure_types = dict(failure_types or {})
    n_ok = len(records)

    r0_test = [r.r0_test for r in records if r.r0_test is not None]
    r1_test = [r.r1_test for r in records if r.r1_test is not None]
    population = _present([r.r0_analytic for r in records])
    classical = _present([r.r0_classical for r in records])

    basis = population if population is not None else r0_test
    violation = float(np.mean(np.asarray(basis) > alpha)) if basis else math.nan
    violation_se = math.sqrt(violation * (1.0 - violation) / len(basis)) if basis else math.nan
    bound = delta3 + 3.0 * math.sqrt(delta3 * (1.0 - delta3) / max(n_ok, 1))

    screening = None
    missed = _present([r.n_missed for r in records])
    false_pos = _present([r.n_false_pos for r in records])
    if missed is not None and false_pos is not None:
        screening = ScreeningSummary(
            selected=SummaryStat.of([r.n_selected for r in records]),
            missed=SummaryStat.of(missed),
            false_positives=SummaryStat.of(false_pos),
        )

    report = McReport(
        example=example,
        variant=variant,
        d=d,
        m=m,
        n=n,
        reps=reps,
        alpha=alpha,
        delta3=delta3,
        n_ok=n_ok,
        n_failed=sum(failure_types.values()),
        failure_types=failure_types,
        r0_test=SummaryStat.of(r0_test),
        r1_test=SummaryStat.of(r1_test),
        r0_population=SummaryStat.of(population) if population is not None else None,
        r0_classical=SummaryStat.of(classical) if classical is not None else None,
        violation_rate=violation,
        violation_se=violation_se,
        violation_bound=bound,
        violation_rate_classical=float(np.mean(np.asarray(classical) > alpha)) if classical else None,
        screening=screening,
        oracle=oracle,
        records=list(records),
    )
    if report.n_failed:
        logger.warning("%d of %d replications failed: %s", report.n_failed, reps, failure_types)
    return report


def records_frame(records: Sequence[ReplicationRecord]) -> pd.DataFrame:
    rows = [r.model_dump() for r in sorted(records, key=lambda r: r.rep)]
    return pd.DataFrame(rows, columns=RECORD_COLUMNS)


def write_report(report: McReport, out_dir: Path) -> Dict[str, Path]:
    """Write replications.csv and report.json into out_dir"""
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "replications.csv"
    json_path = out_dir / "report.json"
    records_frame(report.records).to_csv(csv_path, index=False)
    json_path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    logger.info("Wrote %d replication records to %s", len(report.records), csv_path)
    return {"replications": csv_path, "report": json_path}
