"""
Marginal feature screening by D- or t-statistics
"""

from .cutoffs import TauInterval, lower_quantile, permutation_cutoff, theoretical_tau
from .screen import CutoffKind, ScreeningResult, screen
from .statistics import T_SENTINEL, d_statistics, t_statistics

__all__ = [
    "CutoffKind",
    "ScreeningResult",
    "T_SENTINEL",
    "TauInterval",
    "d_statistics",
    "lower_quantile",
    "permutation_cutoff",
    "screen",
    "t_statistics",
    "theoretical_tau",
]
