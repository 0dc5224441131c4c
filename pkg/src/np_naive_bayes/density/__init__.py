"""
Density-ratio score models: parametric Gaussian and kernel naive Bayes
"""

from .bandwidth import bandwidth
from .base import ModelKind, ScoreModel
from .factory import ScoreModelFactory
from .kde import KDEScoreModel, fit_kde, kernel_values
from .parametric import ParametricScoreModel, fit_parametric

__all__ = [
    "KDEScoreModel",
    "ModelKind",
    "ParametricScoreModel",
    "ScoreModel",
    "ScoreModelFactory",
    "bandwidth",
    "fit_kde",
    "fit_parametric",
    "kernel_values",
]
