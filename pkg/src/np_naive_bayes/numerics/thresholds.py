"""
Order-statistic threshold selection

Closed forms for the Chebyshev-type bound g and its minimal rank k_min,
the Chernoff-type alternative h / k_chern, and the exact Beta-cdf rank.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from ..errors import DomainError
from .binomial import type1_tail_bound
from .params import ThresholdParams

logger = logging.getLogger(__name__)


class CountConvention(Enum):
    """How combinations with an empty feasible set enter the k_chern/k_min comparison"""
    ALL_COMBOS = "all_combos"
    BOTH_NONEMPTY = "both_nonempty"


def g_bound(params: ThresholdParams, k: int) -> float:
    """Type I error level exceeded with probability at most delta3 by the k-th order statistic"""
    m3 = params.m3
    if not 1 <= k <= m3 + 1:
        raise DomainError(f"k must satisfy 1 <= k <= m3+1={m3 + 1}, got {k}")
    head = (m3 + 1 - k) / (m3 + 1)
    spread = k * (m3 + 1 - k) / (params.delta3 * (m3 + 2) * (m3 + 1) ** 2)
    return head + math.sqrt(spread)


def a_of_m3(params: ThresholdParams) -> float:
    """The fraction A with k_min = ceil((m3+1) A); always in (1 - alpha, 1)"""
    alpha, delta3, m3 = params.alpha, params.delta3, params.m3
    numerator = (
        1.0
        + 2.0 * delta3 * (m3 + 2) * (1.0 - alpha)
        + math.sqrt(1.0 + 4.0 * delta3 * (1.0 - alpha) * alpha * (m3 + 2))
    )
    return numerator / (2.0 * (delta3 * (m3 + 2) + 1.0))


def k_min(params: ThresholdParams) -> int:
    """
    Smallest k in 1..m3+1 with g_bound(k) <= alpha

    A value of m3+1 means no order statistic of the left-out sample carries
    the guarantee; callers fall back to the largest one.
    """
    k = math.ceil((params.m3 + 1) * a_of_m3(params))
    return min(max(k, 1), params.m3 + 1)


def h_bound(params: ThresholdParams, k: int) -> float:
    """
    Chernoff-type analogue of g_bound

    Returns +inf when the denominator is not positive, where the bound
    carries no information.
    """
    m3 = params.m3
    if not 1 <= k <= m3:
        raise DomainError(f"k must satisfy 1 <= k <= m3={m3}, got {k}")
    root_log = math.sqrt(math.log(2.0 / params.delta3))
    upper = math.sqrt(m3 - k + 1)
    numerator = m3 + 1 - k + 2.0 * root_log * upper
    denominator = m3 + 1 + 2.0 * root_log * (upper - math.sqrt(k))
    if denominator <= 0.0:
        return math.inf
    return numerator / denominator


def _h_curve(params: ThresholdParams) -> np.ndarray:
    m3 = params.m3
    k = np.arange(1, m3 + 1, dtype=np.float64)
    root_log = math.sqrt(math.log(2.0 / params.delta3))
    upper = np.sqrt(m3 - k + 1)
    numerator = m3 + 1 - k + 2.0 * root_log * upper
    denominator = m3 + 1 + 2.0 * root_log * (upper - np.sqrt(k))
    with np.errstate(divide="ignore", invalid="ignore"):
        h = np.where(denominator > 0.0, numerator / denominator, np.inf)
    return h


def k_chern(params: ThresholdParams) -> Optional[int]:
    """min{k in 1..m3 : h_bound(k) <= alpha}, or None when that set is empty"""
    feasible = np.flatnonzero(_h_curve(params) <= params.alpha)
    if feasible.size == 0:
        logger.debug("K_chern is empty for %s", params)
        return None
    return int(feasible[0]) + 1


def k_exact(params: ThresholdParams) -> int:
    """
    Smallest k in 1..m3 with Beta.cdf_{k, m3+1-k}(1 - alpha) <= delta3, else m3+1

    The Beta cdf at a fixed point decreases in k, so the feasible ranks form
    an upper interval and bisection applies.
    """
    def ok(k: int) -> bool:
        return type1_tail_bound(params, k, params.alpha) <= params.delta3

    if not ok(params.m3):
        return params.m3 + 1
    lo, hi = 1, params.m3
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def classical_rank(m3: int, alpha: float) -> int:
    """ceil(m3 (1 - alpha)), clipped to 1..m3"""
    # float noise such as 100*(1-0.05) = 95.00000000000001 must not round up
    rank = math.ceil(m3 * (1.0 - alpha) - 1e-9)
    return min(max(rank, 1), m3)


@dataclass(frozen=True)
class ChernComparison:
    """Outcome of comparing k_chern against k_min over a grid of (alpha, m3)"""
    delta3: float
    count: int
    total: int
    convention: CountConvention


def count_chern_below_kmin(
    delta3: float,
    alphas: Iterable[float],
    m3s: Iterable[int],
    convention: CountConvention = CountConvention.ALL_COMBOS,
) -> ChernComparison:
    """Count grid points where the Chernoff rank beats k_min"""
    count = 0
    total = 0
    m3_values = list(m3s)
    for alpha in alphas:
        for m3 in m3_values:
            params = ThresholdParams(alpha=alpha, delta3=delta3, m3=m3)
            kmin = k_min(params)
            kchern = k_chern(params)
            if convention is CountConvention.BOTH_NONEMPTY and (kmin > m3 or kchern is None):
                continue
            total += 1
            if kchern is not None and kchern < kmin:
                count += 1
    return ChernComparison(delta3=delta3, count=count, total=total, convention=convention)
