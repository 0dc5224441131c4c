"""
Exception hierarchy for np-naive-bayes

Every error carries the CLI exit code it maps to.
"""

from typing import List, Optional


class NPError(Exception):
    """Base exception for all library errors"""
    exit_code: int = 1


class ConfigError(NPError, ValueError):
    """Raised when a configuration value is out of range"""
    exit_code = 1


class DomainError(NPError, ValueError):
    """Raised when a numeric routine is called outside its domain"""
    exit_code = 1


class VacuousBoundError(DomainError):
    """Raised when a deviation bound's denominator is not positive"""
    pass


class DataValidationError(NPError):
    """Raised when a dataset fails validation"""
    exit_code = 2

    def __init__(self, message: str, issues: Optional[List[str]] = None):
        super().__init__(message)
        self.issues = issues or []


class InsufficientSampleError(NPError):
    """Raised when a class or subsample is too small"""
    exit_code = 2

    def __init__(self, message: str, required: Optional[int] = None):
        super().__init__(message)
        self.required = required


class ScreeningError(NPError):
    """Raised when no feature survives screening"""
    exit_code = 2


class ZeroVarianceError(NPError):
    """Raised when a selected feature has zero pooled variance"""
    exit_code = 2

    def __init__(self, feature: int, name: Optional[str] = None):
        label = f"{feature} ({name})" if name else str(feature)
        super().__init__(f"Feature {label} has zero variance in the estimation subsample")
        self.feature = feature


class InfeasibleGuaranteeError(NPError):
    """Raised when m3 is too small for the type I guarantee and the caller refuses the fallback"""
    exit_code = 3

    def __init__(self, m3: int, minimal_m3: int):
        super().__init__(
            f"m3={m3} is below the guaranteed-feasible size {minimal_m3}; "
            "the classifier falls back to the largest order statistic"
        )
        self.m3 = m3
        self.minimal_m3 = minimal_m3


class TheoryMismatchError(NPError):
    """Raised when a theory verification check fails"""
    exit_code = 4


class ArtifactError(NPError):
    """Raised when a model artifact is malformed or incompatible with the input"""
    exit_code = 2
