"""
Screening cutoffs: the exact-recovery interval and the permutation quantile
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..config import ScreeningMethod, TTestKind
from ..errors import ConfigError, DomainError, InsufficientSampleError
from .statistics import ks_sweep, t_statistics

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TauInterval:
    """Any tau in [low, high] recovers the signal set w.p. >= 1 - delta1"""
    low: float
    high: float


def minimal_screening_size(d: int, delta1: float, big_d: float) -> float:
    """8 D^-2 log(4d/delta1)"""
    return 8.0 * math.log(4.0 * d / delta1) / big_d**2


def theoretical_tau(d: int, n1: int, m1: int, delta1: float, big_d: float) -> TauInterval:
    """[Delta0, D - Delta0] with Delta0 = sqrt(L/(2 n1)) + sqrt(L/(2 m1)), L = log(4d/delta1)"""
    if d < 1 or n1 < 1 or m1 < 1:
        raise DomainError("d, n1 and m1 must be positive")
    if not 0.0 < delta1 < 1.0:
        raise DomainError(f"delta1 must lie in (0, 1), got {delta1}")
    if not 0.0 < big_d <= 1.0:
        raise DomainError(f"D must lie in (0, 1], got {big_d}")

    required = minimal_screening_size(d, delta1, big_d)
    if min(n1, m1) < required * (1.0 - 1e-12):
        raise InsufficientSampleError(
            f"insufficient screening subsample: n1 and m1 must be >= {required:.4f}, got {n1}, {m1}",
            required=math.ceil(required - 1e-9),
        )
    log_term = math.log(4.0 * d / delta1)
    delta0 = math.sqrt(log_term / (2.0 * n1)) + math.sqrt(log_term / (2.0 * m1))
    return TauInterval(low=delta0, high=big_d - delta0)


def lower_quantile(values: np.ndarray, q: float) -> float:
    """Order statistic of rank floor(q * len(values)), rank clipped to 1..len"""
    size = len(values)
    rank = min(max(math.floor(q * size + 1e-9), 1), size)
    return float(np.partition(np.asarray(values, dtype=np.float64), rank - 1)[rank - 1])


def null_statistics(
    pooled: np.ndarray,
    is_class0: np.ndarray,
    method: ScreeningMethod,
    t_kind: TTestKind = TTestKind.WELCH,
) -> np.ndarray:
    """Screening statistics of a pooled sample under the given labelling"""
    if method is ScreeningMethod.DSTAT:
        return ks_sweep(pooled, is_class0)
    if method is ScreeningMethod.TSTAT:
        return t_statistics(pooled[is_class0], pooled[~is_class0], t_kind)
    raise ConfigError(f"no screening statistic for method {method.value}")


def permutation_cutoff(
    class0: np.ndarray,
    class1: np.ndarray,
    method: ScreeningMethod,
    q: float,
    seed: int,
    permutations: int = 1,
    t_kind: TTestKind = TTestKind.WELCH,
) -> float:
    """
    Q-th quantile of the screening statistics after permuting the pooled labels

    With permutations > 1 the cutoff is the mean of the per-permutation quantiles.
    """
    pooled = np.vstack([np.asarray(class0, dtype=np.float64), np.asarray(class1, dtype=np.float64)])
    if len(pooled) < 4:
        raise InsufficientSampleError(f"permutation screening needs >= 4 pooled rows, got {len(pooled)}", required=4)
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"q must lie in [0, 1], got {q}")

    rng = np.random.default_rng(seed)
    labels = np.arange(len(pooled)) < len(class0)
    cutoffs = []
    for _ in range(permutations):
        permuted = rng.permutation(labels)
        cutoffs.append(lower_quantile(null_statistics(pooled, permuted, method, t_kind), q))
    cutoff = float(np.mean(cutoffs))
    logger.debug("permutation cutoff %.6g (method=%s, q=%s, B=%d)", cutoff, method.value, q, permutations)
    return cutoff
