"""
Score-model factory

Builds fitted score models from configuration and restores them from
stored parameters.
"""

from typing import Any, Dict, Optional, Sequence, Type

import numpy as np

from ..config import EstimatorKind, NPConfig
from ..errors import ArtifactError
from .base import ModelKind, ScoreModel
from .kde import KDEScoreModel, fit_kde
from .parametric import ParametricScoreModel, fit_parametric


class ScoreModelFactory:
    """Factory for creating score model instances"""

    # Registry of available model families
    _models: Dict[EstimatorKind, Type[ScoreModel]] = {
        EstimatorKind.PARAMETRIC: ParametricScoreModel,
        EstimatorKind.NONPARAMETRIC: KDEScoreModel,
    }

    _kinds: Dict[ModelKind, EstimatorKind] = {
        ModelKind.PARAMETRIC_GAUSSIAN: EstimatorKind.PARAMETRIC,
        ModelKind.NONPARAMETRIC_KDE: EstimatorKind.NONPARAMETRIC,
    }

    @classmethod
    def create_model(
        cls,
        cfg: NPConfig,
        class0: np.ndarray,
        class1: np.ndarray,
        selected: np.ndarray,
        feature_names: Optional[Sequence[str]] = None,
    ) -> ScoreModel:
        """
        Fit the score model named by the configuration

        Args:
            cfg: NP configuration (estimator, kernel, bandwidth rule)
            class0: class-0 estimation rows
            class1: class-1 estimation rows
            selected: 0-based feature indices

        Returns:
            Fitted score model

        Raises:
            ValueError: If the estimator kind is not registered
        """
        if cfg.estimator not in cls._models:
            raise ValueError(f"Unsupported estimator: {cfg.estimator.value}")
        if cfg.estimator is EstimatorKind.PARAMETRIC:
            return fit_parametric(class0, class1, selected, feature_names)
        return fit_kde(class0, class1, selected, cfg.kernel, cfg.bandwidth_rule, feature_names)

    @classmethod
    def from_params(cls, params: Dict[str, Any]) -> ScoreModel:
        """Restore a model from to_params() output"""
        try:
            estimator = cls._kinds[ModelKind(params["kind"])]
            return cls._models[estimator].from_params(params)
        except (KeyError, ValueError, TypeError) as e:
            raise ArtifactError(f"Invalid score-model parameters: {e}") from e

    @classmethod
    def get_available_estimators(cls) -> list[EstimatorKind]:
        return list(cls._models.keys())
