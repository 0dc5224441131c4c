"""
Theory diagnostics: bounds on |R0 - R0*|, the excess type II error and the
uniform deviation of the screened kernel density-ratio estimate.
"""

import math

from ..errors import DomainError, VacuousBoundError
from .params import DiagnosticConstants, ThresholdParams
from .thresholds import a_of_m3, k_min


def _require_feasible(params: ThresholdParams) -> None:
    if not params.guaranteed_feasible:
        raise DomainError(
            f"m3={params.m3} is below 4/(alpha*delta3); need m3 >= {params.minimal_m3}"
        )


def xi_bound(params: ThresholdParams, delta4: float) -> float:
    """Distance between R0 of the plug-in classifier and R0 of the oracle, w.p. >= 1 - delta4"""
    if not 0.0 < delta4 < 1.0:
        raise DomainError(f"delta4 must lie in (0, 1), got {delta4}")
    _require_feasible(params)
    m3 = params.m3
    k = k_min(params)
    spread = k * (m3 + 1 - k) / ((m3 + 2) * (m3 + 1) ** 2 * delta4)
    return math.sqrt(spread) + a_of_m3(params) - (1.0 - params.alpha) + 1.0 / (m3 + 1)


def xi_simple_bound(m3: int) -> float:
    """(5/2) m3^(-1/4), valid for xi once m3 >= max(delta3^-2, delta4^-2)"""
    return 2.5 * m3 ** -0.25


def excess_type2_bound(params: ThresholdParams, diag: DiagnosticConstants) -> float:
    """
    Upper bound on R1(phi_hat) - R1(phi*) holding w.p. >= 1 - delta3 - delta4

    The size requirement involving the detection constant delta* is the
    caller's responsibility; the other three are checked here.
    """
    _require_feasible(params)
    m3 = params.m3
    needed = max(params.delta3 ** -2, diag.delta4 ** -2)
    if m3 < needed:
        raise DomainError(f"m3={m3} is below max(delta3^-2, delta4^-2)={needed:.6g}")

    scale = 0.4 * m3 ** 0.25
    margin_term = (scale * diag.m1_const) ** (-1.0 / diag.gamma_under) + 2.0 * diag.sup_dev
    return 2.0 * diag.m0 * margin_term ** (1.0 + diag.gamma_bar) + diag.c_alpha / scale


def _deviation_part(c: float, count: int, s: int, delta2: float, h: float) -> float:
    return c * math.sqrt(math.log(2.0 * count * s / delta2) / (count * h))


def deviation_bound(
    s: int,
    n2: int,
    m2: int,
    h1: float,
    h0: float,
    delta2: float,
    c1: float,
    c0: float,
    mu_floor: float,
    r_sup: float,
) -> float:
    """
    Uniform deviation bound T = B e^B ||r||_inf for the screened kernel estimate

    Raises VacuousBoundError when either estimation error term reaches the
    density floor mu, where the bound carries no information.
    """
    if s < 1 or n2 < 1 or m2 < 1:
        raise DomainError("s, n2 and m2 must be positive integers")
    if min(h1, h0, c1, c0, mu_floor, r_sup) <= 0.0:
        raise DomainError("bandwidths, constants, mu_floor and r_sup must be positive")
    if not 0.0 < delta2 < 1.0:
        raise DomainError(f"delta2 must lie in (0, 1), got {delta2}")

    e1 = _deviation_part(c1, n2, s, delta2, h1)
    e0 = _deviation_part(c0, m2, s, delta2, h0)
    if e1 >= mu_floor or e0 >= mu_floor:
        raise VacuousBoundError(
            f"estimation error terms ({e1:.4g}, {e0:.4g}) reach mu_floor={mu_floor}; bound is vacuous"
        )
    b = s * (e1 / (mu_floor - e1) + e0 / (mu_floor - e0))
    return b * math.exp(b) * r_sup
