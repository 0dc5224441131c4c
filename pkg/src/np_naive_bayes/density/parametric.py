"""
Parametric Gaussian naive Bayes score

Class densities are independent normals per feature with a variance shared
by the two classes, so the log ratio is affine in x.
"""

import logging
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..errors import InsufficientSampleError, ZeroVarianceError
from .base import ModelKind, ScoreModel

logger = logging.getLogger(__name__)


class ParametricScoreModel(ScoreModel):
    """Affine log-ratio score sum_j w_j x_j + b over the selected features"""

    def __init__(self, selected: np.ndarray, d: int, mu0: np.ndarray, mu1: np.ndarray, var: np.ndarray):
        super().__init__(selected, d)
        self.mu0 = np.asarray(mu0, dtype=np.float64)
        self.mu1 = np.asarray(mu1, dtype=np.float64)
        self.var = np.asarray(var, dtype=np.float64)
        if not (self.mu0.shape == self.mu1.shape == self.var.shape == self.selected.shape):
            raise ValueError("mu0, mu1 and var must have one entry per selected feature")
        bad = np.flatnonzero(~(self.var > 0.0))
        if bad.size:
            raise ZeroVarianceError(int(self.selected[bad[0]]))
        self._weights = (self.mu1 - self.mu0) / self.var
        self._offsets = 0.5 * (self.mu0**2 - self.mu1**2) / self.var

    @property
    def kind(self) -> ModelKind:
        return ModelKind.PARAMETRIC_GAUSSIAN

    def coefficients(self) -> Tuple[np.ndarray, float]:
        """(w, b) with w over all d coordinates, zero off the selected set"""
        w = np.zeros(self.d, dtype=np.float64)
        w[self.selected] = self._weights
        return w, float(self._offsets.sum())

    def feature_log_ratios(self, X: np.ndarray) -> np.ndarray:
        X = self._check_rows(X)
        return X[:, self.selected] * self._weights + self._offsets

    def to_params(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "d": self.d,
            "selected": self.selected.tolist(),
            "mu0": self.mu0.tolist(),
            "mu1": self.mu1.tolist(),
            "var": self.var.tolist(),
        }

    @classmethod
    def from_params(cls, params: Dict[str, Any]) -> "ParametricScoreModel":
        return cls(
            selected=np.asarray(params["selected"], dtype=np.intp),
            d=int(params["d"]),
            mu0=np.asarray(params["mu0"], dtype=np.float64),
            mu1=np.asarray(params["mu1"], dtype=np.float64),
            var=np.asarray(params["var"], dtype=np.float64),
        )


def fit_parametric(
    class0: np.ndarray,
    class1: np.ndarray,
    selected: np.ndarray,
    feature_names: Optional[Sequence[str]] = None,
) -> ParametricScoreModel:
    """
    Fit class means and pooled per-feature variances on the selected columns

    Args:
        class0: class-0 estimation rows (full dimension)
        class1: class-1 estimation rows (full dimension)
        selected: 0-based feature indices
        feature_names: optional names used in error messages

    Returns:
        Fitted parametric score model

    Raises:
        ZeroVarianceError: If a selected feature has zero pooled variance
    """
    class0 = np.asarray(class0, dtype=np.float64)
    class1 = np.asarray(class1, dtype=np.float64)
    selected = np.asarray(selected, dtype=np.intp)
    m, n = len(class0), len(class1)
    if m < 2 or n < 2:
        raise InsufficientSampleError(f"parametric fit needs >= 2 rows per class, got {m} and {n}", required=2)

    cols0 = class0[:, selected]
    cols1 = class1[:, selected]
    mu0 = cols0.mean(axis=0)
    mu1 = cols1.mean(axis=0)
    pooled = ((m - 1) * cols0.var(axis=0, ddof=1) + (n - 1) * cols1.var(axis=0, ddof=1)) / (m + n - 2)

    zero = np.flatnonzero(~(pooled > 0.0))
    if zero.size:
        feature = int(selected[zero[0]])
        name = feature_names[feature] if feature_names is not None else None
        raise ZeroVarianceError(feature, name)

    logger.debug("fitted parametric model on %d features (m=%d, n=%d)", selected.size, m, n)
    return ParametricScoreModel(selected, class0.shape[1], mu0, mu1, pooled)
