"""
NP classifier assembly, population errors and model persistence
"""

from .artifact import ModelArtifactFile, load_model, save_model
from .classifier import (
    NPClassifier,
    classical_quantile_threshold,
    empirical_errors,
    order_statistic,
    threshold_rank,
    train,
)
from .evaluation import analytic_type1_error, mc_type1_error

__all__ = [
    "ModelArtifactFile",
    "NPClassifier",
    "analytic_type1_error",
    "classical_quantile_threshold",
    "empirical_errors",
    "load_model",
    "mc_type1_error",
    "order_statistic",
    "save_model",
    "threshold_rank",
    "train",
]
