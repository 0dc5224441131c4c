"""
Binomial and Beta tail probabilities

Beta cdf values with integer shape parameters are obtained from the
binomial distribution through the identity

    1 - Bin.cdf_{n,p}(k-1) = Beta.cdf_{k, n+1-k}(p),

so no incomplete-beta routine is needed.
"""

import logging

import numpy as np
from scipy.special import gammaln, logsumexp, xlog1py, xlogy

from ..errors import DomainError
from .params import ThresholdParams

logger = logging.getLogger(__name__)

CLAMP_TOLERANCE = 1e-12


def clamp_probability(value: float, where: str = "") -> float:
    """Clamp a floating-point probability to [0, 1], logging large corrections"""
    clamped = min(1.0, max(0.0, value))
    if abs(clamped - value) > CLAMP_TOLERANCE:
        logger.warning("Clamped probability %r to %r in %s", value, clamped, where or "numerics")
    return clamped


def _log_pmf(n: int, p: float, lo: int, hi: int) -> np.ndarray:
    """log P{Bin(n,p) = j} for j = lo..hi"""
    j = np.arange(lo, hi + 1, dtype=np.float64)
    return (
        gammaln(n + 1.0)
        - gammaln(j + 1.0)
        - gammaln(n - j + 1.0)
        + xlogy(j, p)
        + xlog1py(n - j, -p)
    )


def _tail_sum(n: int, p: float, lo: int, hi: int) -> float:
    if hi < lo:
        return 0.0
    return float(np.exp(logsumexp(_log_pmf(n, p, lo, hi))))


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")


def binomial_cdf(n: int, p: float, k: int) -> float:
    """
    P{Bin(n, p) <= k} by exact log-space summation

    The tail on the far side of the mean is summed directly so the result
    never comes from subtracting two numbers close to one.
    """
    _check_p(p)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if k < 0:
        return 0.0
    if k >= n:
        return 1.0
    if p == 0.0:
        return 1.0
    if p == 1.0:
        return 0.0

    if k < n * p:
        value = _tail_sum(n, p, 0, k)
    else:
        value = 1.0 - _tail_sum(n, p, k + 1, n)
    return clamp_probability(value, "binomial_cdf")


def binomial_sf(n: int, p: float, k: int) -> float:
    """P{Bin(n, p) > k}, summed on the accurate side"""
    _check_p(p)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if k < 0:
        return 1.0
    if k >= n:
        return 0.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0

    if k >= n * p:
        value = _tail_sum(n, p, k + 1, n)
    else:
        value = 1.0 - _tail_sum(n, p, 0, k)
    return clamp_probability(value, "binomial_sf")


def beta_cdf_via_duality(k: int, n: int, p: float) -> float:
    """Beta.cdf_{k, n+1-k}(p) = 1 - Bin.cdf_{n,p}(k-1)"""
    if not 1 <= k <= n:
        raise DomainError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    _check_p(p)
    return binomial_sf(n, p, k - 1)


def type1_tail_bound(params: ThresholdParams, k: int, delta: float) -> float:
    """
    Upper bound on P{R0(phi_k) > delta} for the k-th order statistic threshold

    Equals Beta.cdf_{k, m3+1-k}(1 - delta), with equality when the score
    distribution under class 0 is continuous.
    """
    if not 1 <= k <= params.m3:
        raise DomainError(f"k must satisfy 1 <= k <= m3={params.m3}, got {k}")
    _check_p(delta)
    return beta_cdf_via_duality(k, params.m3, 1.0 - delta)
