"""
Bandwidth rules for the per-feature kernel density estimates
"""

import math

from ..config import BandwidthRule
from ..errors import DomainError


def bandwidth(rule: BandwidthRule, n: float, sample_sd: float) -> float:
    """
    Kernel bandwidth for a sample of size n with spread sample_sd

    rate_beta2 is the (log n / n)^(1/(2 beta + 1)) rate at beta = 2 scaled
    by the sample spread; silverman is the normal-reference rule of thumb.
    """
    if n < 2:
        raise DomainError(f"bandwidth needs n >= 2, got {n}")
    if not sample_sd > 0.0 or not math.isfinite(sample_sd):
        raise DomainError(f"bandwidth needs a positive finite spread, got {sample_sd}")

    if rule is BandwidthRule.RATE_BETA2:
        h = (math.log(n) / n) ** 0.2 * sample_sd
    elif rule is BandwidthRule.SILVERMAN:
        h = 1.06 * sample_sd * n**-0.2
    else:
        raise DomainError(f"unknown bandwidth rule: {rule}")

    if not h > 0.0:
        raise DomainError(f"nonpositive bandwidth {h} for n={n}, sd={sample_sd}")
    return h
