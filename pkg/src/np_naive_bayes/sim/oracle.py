"""
Oracle type I/II risks of the Neyman-Pearson rule 1{log r(x) >= C_alpha}

The mean-shift design has a closed form. The mixture design is resolved by
Monte Carlo on the exact log density ratio.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from ..errors import DomainError
from .generators import (
    EX1_SHIFT,
    EX2_CENTER,
    EX2_SIGNAL_VAR,
    SIGNAL_DIMS,
    Example,
    Seed,
    generate,
)

logger = logging.getLogger(__name__)

ORACLE_DRAWS = 10_000_000
ORACLE_CHUNK = 1_000_000

# log r(X) for the mean-shift design: 0.5 * sum(x_1..x_10) - 1.25
EX1_LOG_RATIO_SHIFT = SIGNAL_DIMS * EX1_SHIFT**2 / 2.0
EX1_LOG_RATIO_SD = math.sqrt(SIGNAL_DIMS * EX1_SHIFT**2)


@dataclass(frozen=True)
class OracleRisks:
    r0_star: float
    r1_star: float
    threshold: float


def oracle_log_ratio(example: Example, X: np.ndarray) -> np.ndarray:
    """Exact log p(x)/q(x); only the first ten coordinates matter"""
    signal = np.asarray(X, dtype=np.float64)[:, :SIGNAL_DIMS]
    if example is Example.EX1_MEAN_SHIFT:
        return EX1_SHIFT * signal.sum(axis=1) - EX1_LOG_RATIO_SHIFT

    scale = 2.0 * EX2_SIGNAL_VAR
    plus = -np.sum((signal - EX2_CENTER) ** 2, axis=1) / scale
    minus = -np.sum((signal + EX2_CENTER) ** 2, axis=1) / scale
    norm = math.log(0.5) - 0.5 * SIGNAL_DIMS * math.log(EX2_SIGNAL_VAR)
    return norm + np.logaddexp(plus, minus) + 0.5 * np.sum(signal**2, axis=1)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def closed_form_ex1(alpha: float) -> OracleRisks:
    """log r(X) ~ N(-1.25, 2.5) under class 0 and N(1.25, 2.5) under class 1"""
    _check_alpha(alpha)
    c = -EX1_LOG_RATIO_SHIFT + EX1_LOG_RATIO_SD * float(ndtri(1.0 - alpha))
    r1 = float(ndtr((c - EX1_LOG_RATIO_SHIFT) / EX1_LOG_RATIO_SD))
    return OracleRisks(r0_star=alpha, r1_star=r1, threshold=c)


def _log_ratios(example: Example, label: int, draws: int, rng: np.random.Generator) -> np.ndarray:
    out = np.empty(draws, dtype=np.float64)
    for start in range(0, draws, ORACLE_CHUNK):
        rows = min(ORACLE_CHUNK, draws - start)
        out[start : start + rows] = oracle_log_ratio(example, generate(example, SIGNAL_DIMS, rows, label, rng))
    return out


def monte_carlo_oracle(example: Example, alpha: float, draws: int = ORACLE_DRAWS, seed: Seed = 0) -> OracleRisks:
    """C_alpha as the empirical 1 - alpha quantile of class-0 log ratios, R1 on fresh class-1 draws"""
    _check_alpha(alpha)
    if draws < 1:
        raise DomainError(f"draws must be positive, got {draws}")
    rng = np.random.default_rng(seed)
    null = _log_ratios(example, 0, draws, rng)
    c = float(np.quantile(null, 1.0 - alpha))
    r0 = float(np.mean(null >= c))
    r1 = float(np.mean(_log_ratios(example, 1, draws, rng) < c))
    logger.debug("Monte Carlo oracle for %s at alpha=%s: C=%.6g R1=%.6g", example.value, alpha, c, r1)
    return OracleRisks(r0_star=r0, r1_star=r1, threshold=c)


def oracle_risks(example: Example, alpha: float, draws: int = ORACLE_DRAWS, seed: Seed = 0) -> OracleRisks:
    """Oracle (R0*, R1*): closed form for the mean-shift design, Monte Carlo otherwise"""
    if example is Example.EX1_MEAN_SHIFT:
        return closed_form_ex1(alpha)
    return monte_carlo_oracle(example, alpha, draws, seed)
