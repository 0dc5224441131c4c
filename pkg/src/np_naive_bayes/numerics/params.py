"""
Parameter records for the threshold theory
"""

import math
from dataclasses import dataclass

from ..errors import DomainError


def minimal_m3(alpha: float, delta3: float) -> int:
    """Smallest m3 satisfying m3 >= 4/(alpha*delta3)"""
    # tolerance keeps exact boundaries such as 4/(0.05*0.05) = 1600 at 1600
    return math.ceil(4.0 / (alpha * delta3) - 1e-9)


@dataclass(frozen=True)
class ThresholdParams:
    """Target level alpha, violation tolerance delta3 and left-out class-0 size m3"""
    alpha: float
    delta3: float
    m3: int

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0.0 < self.delta3 < 1.0:
            raise DomainError(f"delta3 must lie in (0, 1), got {self.delta3}")
        if self.m3 < 1:
            raise DomainError(f"m3 must be >= 1, got {self.m3}")

    @property
    def guaranteed_feasible(self) -> bool:
        """m3 >= 4/(alpha*delta3), which forces k_min <= m3"""
        return self.m3 >= minimal_m3(self.alpha, self.delta3)

    @property
    def minimal_m3(self) -> int:
        return minimal_m3(self.alpha, self.delta3)


@dataclass(frozen=True)
class DiagnosticConstants:
    """Margin/detection constants feeding the excess type II bound"""
    delta4: float
    m0: float
    m1_const: float
    gamma_bar: float
    gamma_under: float
    c_alpha: float
    sup_dev: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 < self.delta4 < 1.0:
            raise DomainError(f"delta4 must lie in (0, 1), got {self.delta4}")
        positives = {
            "m0": self.m0,
            "m1_const": self.m1_const,
            "gamma_bar": self.gamma_bar,
            "gamma_under": self.gamma_under,
            "c_alpha": self.c_alpha,
        }
        for name, value in positives.items():
            if not value > 0.0:
                raise DomainError(f"{name} must be strictly positive, got {value}")
        if self.sup_dev < 0.0:
            raise DomainError(f"sup_dev must be nonnegative, got {self.sup_dev}")
