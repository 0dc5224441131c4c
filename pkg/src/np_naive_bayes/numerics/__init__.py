"""
Threshold numerics for Neyman-Pearson classification

Binomial/Beta tails, the rank rules k_min, k_chern and k_exact, and the
theory diagnostics built on them.
"""

from .binomial import beta_cdf_via_duality, binomial_cdf, binomial_sf, type1_tail_bound
from .diagnostics import (
    deviation_bound,
    excess_type2_bound,
    xi_bound,
    xi_simple_bound,
)
from .params import DiagnosticConstants, ThresholdParams, minimal_m3
from .thresholds import (
    CountConvention,
    a_of_m3,
    classical_rank,
    count_chern_below_kmin,
    g_bound,
    h_bound,
    k_chern,
    k_exact,
    k_min,
)

__all__ = [
    "CountConvention",
    "DiagnosticConstants",
    "ThresholdParams",
    "a_of_m3",
    "beta_cdf_via_duality",
    "binomial_cdf",
    "binomial_sf",
    "classical_rank",
    "count_chern_below_kmin",
    "deviation_bound",
    "excess_type2_bound",
    "g_bound",
    "h_bound",
    "k_chern",
    "k_exact",
    "k_min",
    "minimal_m3",
    "type1_tail_bound",
    "xi_bound",
    "xi_simple_bound",
]
