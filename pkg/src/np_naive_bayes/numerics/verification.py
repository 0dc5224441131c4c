"""
Numerical verification of the threshold theory

Each check returns a CheckResult; the CLI renders them and turns failures
into exit code 4.
"""

import logging
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy import integrate, stats

from .binomial import beta_cdf_via_duality
from .params import ThresholdParams
from .thresholds import CountConvention, count_chern_below_kmin, k_min

logger = logging.getLogger(__name__)

PUBLISHED_CHERN_COUNTS: Tuple[int, ...] = (83, 70, 49, 4, 0, 0, 0, 0, 0, 0)
CHERN_DELTA3S: Tuple[float, ...] = tuple(round(0.01 * i, 2) for i in range(1, 11))
CHERN_ALPHAS: Tuple[float, ...] = tuple(round(0.01 * i, 2) for i in range(1, 11))
CHERN_M3S: Tuple[int, ...] = tuple(100 * i for i in range(1, 11))

KMIN_LEVELS: Tuple[float, ...] = (0.01, 0.05, 0.1)
P_GRID: Tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(11))


class CheckResult(BaseModel):
    """Outcome of one verification check"""
    name: str = Field(description="Check name")
    passed: bool = Field(description="Whether the check passed")
    detail: str = Field(default="", description="Human readable summary")
    metrics: Dict[str, Any] = Field(default_factory=dict, description="Computed values")


def check_chern_table(
    convention: CountConvention = CountConvention.ALL_COMBOS,
    published: Sequence[int] = PUBLISHED_CHERN_COUNTS,
) -> CheckResult:
    """Reproduce the k_chern < k_min counts; pass needs 9 exact cells and no cell off by more than 2"""
    counts: List[int] = []
    totals: List[int] = []
    for delta3 in CHERN_DELTA3S:
        comparison = count_chern_below_kmin(delta3, CHERN_ALPHAS, CHERN_M3S, convention)
        counts.append(comparison.count)
        totals.append(comparison.total)

    exact = sum(1 for got, want in zip(counts, published) if got == want)
    worst = max(abs(got - want) for got, want in zip(counts, published))
    passed = exact >= len(published) - 1 and worst <= 2
    return CheckResult(
        name="chern_table",
        passed=passed,
        detail=f"{exact}/{len(published)} cells exact under {convention.value}",
        metrics={
            "delta3": list(CHERN_DELTA3S),
            "counts": counts,
            "totals": totals,
            "published": list(published),
            "convention": convention.value,
        },
    )


def brute_force_k_min(params: ThresholdParams) -> int:
    """Smallest k in 1..m3+1 with g(k) <= alpha by scanning every rank"""
    m3 = params.m3
    k = np.arange(1, m3 + 2, dtype=np.float64)
    g = (m3 + 1 - k) / (m3 + 1) + np.sqrt(
        k * (m3 + 1 - k) / (params.delta3 * (m3 + 2) * (m3 + 1) ** 2)
    )
    return int(np.flatnonzero(g <= params.alpha)[0]) + 1


def check_kmin_grid(small: bool = False) -> CheckResult:
    """Closed-form k_min against the brute-force scan on the standard grid"""
    top = 500 if small else 2000
    mismatches: List[Dict[str, Any]] = []
    checked = 0
    for alpha in KMIN_LEVELS:
        for delta3 in KMIN_LEVELS:
            for m3 in range(50, top + 1, 50):
                params = ThresholdParams(alpha=alpha, delta3=delta3, m3=m3)
                closed, brute = k_min(params), brute_force_k_min(params)
                checked += 1
                if closed != brute:
                    mismatches.append({"alpha": alpha, "delta3": delta3, "m3": m3, "closed": closed, "brute": brute})
    return CheckResult(
        name="kmin_grid",
        passed=not mismatches,
        detail=f"{checked - len(mismatches)}/{checked} grid points agree",
        metrics={"checked": checked, "mismatches": mismatches[:10]},
    )


def quadrature_beta_cdf(a: float, b: float, grid: Sequence[float] = P_GRID) -> List[float]:
    """Beta(a, b) cdf at increasing grid points by piecewise adaptive quadrature"""
    density = stats.beta(a, b).pdf
    values = [0.0]
    for lo, hi in zip(grid[:-1], grid[1:]):
        piece, _ = integrate.quad(density, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)
        values.append(values[-1] + piece)
    return values


def duality_sizes(small: bool = False) -> List[int]:
    if small:
        return list(range(1, 41))
    return list(range(1, 31)) + list(range(40, 201, 10))


def check_duality(small: bool = False, tolerance: float = 1e-9) -> CheckResult:
    """Max |duality Beta cdf - quadrature Beta cdf| over (n, k, p)"""
    worst = 0.0
    worst_at: Tuple[int, int, float] = (0, 0, 0.0)
    for n in duality_sizes(small):
        for k in range(1, n + 1):
            quad_values = quadrature_beta_cdf(k, n + 1 - k)
            for p, expected in zip(P_GRID, quad_values):
                gap = abs(beta_cdf_via_duality(k, n, p) - expected)
                if gap > worst:
                    worst, worst_at = gap, (n, k, p)
    return CheckResult(
        name="duality",
        passed=worst < tolerance,
        detail=f"max error {worst:.3e} at (n, k, p) = {worst_at}",
        metrics={"max_error": worst, "at": list(worst_at), "tolerance": tolerance},
    )


def run_all(
    convention: CountConvention = CountConvention.ALL_COMBOS, small: bool = False
) -> List[CheckResult]:
    """Every theory check, in report order"""
    results = [check_chern_table(convention), check_kmin_grid(small), check_duality(small)]
    for result in results:
        log = logger.info if result.passed else logger.error
        log("%s: %s", result.name, result.detail)
    return results


def chern_convention_report() -> Dict[str, List[int]]:
    """Counts under both conventions, for documenting which matches the published row"""
    return {
        convention.value: check_chern_table(convention).metrics["counts"]
        for convention in CountConvention
    }
