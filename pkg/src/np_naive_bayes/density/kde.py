"""
Nonparametric kernel naive Bayes score

Each selected feature gets a one-dimensional kernel density estimate per
class; the score is the sum over features of log p_j(x_j) - log q_j(x_j).
"""

import logging
import math
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..config import BandwidthRule, KernelKind
from ..errors import InsufficientSampleError, ZeroVarianceError
from .bandwidth import bandwidth
from .base import ModelKind, ScoreModel

logger = logging.getLogger(__name__)

FLOOR_SCALE = 1e-12

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def kernel_values(kernel: KernelKind, u: np.ndarray) -> np.ndarray:
    """K(u) for a second-order kernel"""
    if kernel is KernelKind.GAUSSIAN:
        return _INV_SQRT_2PI * np.exp(-0.5 * u * u)
    if kernel is KernelKind.EPANECHNIKOV:
        return np.where(np.abs(u) <= 1.0, 0.75 * (1.0 - u * u), 0.0)
    raise ValueError(f"unknown kernel: {kernel}")


class KDEScoreModel(ScoreModel):
    """Product-form kernel density ratio over the selected features"""

    def __init__(
        self,
        selected: np.ndarray,
        d: int,
        sample0: np.ndarray,
        sample1: np.ndarray,
        h0: np.ndarray,
        h1: np.ndarray,
        kernel: KernelKind = KernelKind.GAUSSIAN,
        density_floor: Optional[float] = None,
    ):
        super().__init__(selected, d)
        self.sample0 = np.ascontiguousarray(sample0, dtype=np.float64)
        self.sample1 = np.ascontiguousarray(sample1, dtype=np.float64)
        self.h0 = np.asarray(h0, dtype=np.float64)
        self.h1 = np.asarray(h1, dtype=np.float64)
        self.kernel = kernel

        s = self.selected.size
        if self.sample0.ndim != 2 or self.sample0.shape[1] != s or self.sample1.ndim != 2 or self.sample1.shape[1] != s:
            raise ValueError("sample columns must match the selected features")
        if self.h0.shape != (s,) or self.h1.shape != (s,):
            raise ValueError("one bandwidth per selected feature and class is required")
        if not (np.all(self.h0 > 0.0) and np.all(self.h1 > 0.0)):
            raise ValueError("bandwidths must be positive")

        if density_floor is None:
            # one floor for both classes keeps far-tail scores at exactly zero
            density_floor = FLOOR_SCALE / float(max(self.h0.max(), self.h1.max()))
        if not density_floor > 0.0:
            raise ValueError(f"density_floor must be positive, got {density_floor}")
        self.density_floor = float(density_floor)

    @property
    def kind(self) -> ModelKind:
        return ModelKind.NONPARAMETRIC_KDE

    def _column_density(self, x: np.ndarray, sample: np.ndarray, h: float) -> np.ndarray:
        u = (sample[None, :] - x[:, None]) / h
        return kernel_values(self.kernel, u).mean(axis=1) / h

    def feature_densities(self, X: np.ndarray, label: int, floored: bool = True) -> np.ndarray:
        """
        Per-feature class densities at the rows of X

        Args:
            X: rows of full dimension d
            label: 1 for p (class 1), 0 for q (class 0)
            floored: apply density_floor

        Returns:
            Matrix of shape (rows, len(selected))
        """
        X = self._check_rows(X)
        sample, h = (self.sample1, self.h1) if label == 1 else (self.sample0, self.h0)
        out = np.empty((len(X), self.selected.size), dtype=np.float64)
        for j, feature in enumerate(self.selected):
            out[:, j] = self._column_density(X[:, feature], sample[:, j], h[j])
        if floored:
            np.maximum(out, self.density_floor, out=out)
        return out

    def feature_log_ratios(self, X: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.feature_densities(X, 1)) - np.log(self.feature_densities(X, 0))

    def to_params(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "d": self.d,
            "selected": self.selected.tolist(),
            "kernel": self.kernel.value,
            "h0": self.h0.tolist(),
            "h1": self.h1.tolist(),
            "density_floor": self.density_floor,
            "sample0": self.sample0.T.tolist(),
            "sample1": self.sample1.T.tolist(),
        }

    @classmethod
    def from_params(cls, params: Dict[str, Any]) -> "KDEScoreModel":
        selected = np.asarray(params["selected"], dtype=np.intp)
        return cls(
            selected=selected,
            d=int(params["d"]),
            sample0=np.asarray(params["sample0"], dtype=np.float64).reshape(selected.size, -1).T,
            sample1=np.asarray(params["sample1"], dtype=np.float64).reshape(selected.size, -1).T,
            h0=np.asarray(params["h0"], dtype=np.float64),
            h1=np.asarray(params["h1"], dtype=np.float64),
            kernel=KernelKind(params["kernel"]),
            density_floor=float(params["density_floor"]),
        )


def _bandwidths(
    cols: np.ndarray,
    rule: BandwidthRule,
    selected: np.ndarray,
    feature_names: Optional[Sequence[str]],
) -> np.ndarray:
    sds = cols.std(axis=0, ddof=1)
    for j, sd in enumerate(sds):
        if not sd > 0.0:
            feature = int(selected[j])
            raise ZeroVarianceError(feature, feature_names[feature] if feature_names is not None else None)
    return np.array([bandwidth(rule, len(cols), float(sd)) for sd in sds])


def fit_kde(
    class0: np.ndarray,
    class1: np.ndarray,
    selected: np.ndarray,
    kernel: KernelKind = KernelKind.GAUSSIAN,
    bandwidth_rule: BandwidthRule = BandwidthRule.RATE_BETA2,
    feature_names: Optional[Sequence[str]] = None,
) -> KDEScoreModel:
    """Store the selected sample columns and per-class bandwidths"""
    class0 = np.asarray(class0, dtype=np.float64)
    class1 = np.asarray(class1, dtype=np.float64)
    selected = np.asarray(selected, dtype=np.intp)
    if len(class0) < 2 or len(class1) < 2:
        raise InsufficientSampleError(
            f"kernel fit needs >= 2 rows per class, got {len(class0)} and {len(class1)}", required=2
        )

    cols0 = class0[:, selected]
    cols1 = class1[:, selected]
    h0 = _bandwidths(cols0, bandwidth_rule, selected, feature_names)
    h1 = _bandwidths(cols1, bandwidth_rule, selected, feature_names)
    logger.debug(
        "fitted %s KDE on %d features (m=%d, n=%d)", kernel.value, selected.size, len(cols0), len(cols1)
    )
    return KDEScoreModel(selected, class0.shape[1], cols0, cols1, h0, h1, kernel)
