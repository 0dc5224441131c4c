"""
Base score-model interface

A score model returns the log density ratio log p(x)/q(x) restricted to its
selected features. Every model scores rows independently, so a row's score
does not depend on the batch it is scored in.
"""

from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict

import numpy as np

CHUNK_ROWS = 512


class ModelKind(Enum):
    PARAMETRIC_GAUSSIAN = "parametric_gaussian"
    NONPARAMETRIC_KDE = "nonparametric_kde"


class ScoreModel(ABC):
    """Abstract base class for fitted log density-ratio scorers"""

    def __init__(self, selected: np.ndarray, d: int):
        selected = np.asarray(selected, dtype=np.intp)
        if selected.ndim != 1 or selected.size == 0:
            raise ValueError("a score model needs at least one selected feature")
        if selected.min() < 0 or selected.max() >= d:
            raise ValueError(f"selected features must lie in 0..{d - 1}")
        self.selected = selected
        self.d = int(d)

    @property
    @abstractmethod
    def kind(self) -> ModelKind:
        """Model family"""
        pass

    @abstractmethod
    def feature_log_ratios(self, X: np.ndarray) -> np.ndarray:
        """
        Per-feature log ratios log p_j(x_j)/q_j(x_j)

        Args:
            X: rows of full dimension d

        Returns:
            Matrix of shape (rows, len(selected))
        """
        pass

    @abstractmethod
    def to_params(self) -> Dict[str, Any]:
        """JSON-ready parameters; inverse of the factory's from_params"""
        pass

    @classmethod
    @abstractmethod
    def from_params(cls, params: Dict[str, Any]) -> "ScoreModel":
        """Rebuild a model from to_params() output"""
        pass

    def _check_rows(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.d:
            raise ValueError(f"expected rows of dimension {self.d}, got {X.shape[1]}")
        return X

    def score_many(self, X: np.ndarray) -> np.ndarray:
        """Log-ratio scores of every row"""
        X = self._check_rows(X)
        if len(X) == 0:
            return np.empty(0, dtype=np.float64)
        parts = [
            self._sum_features(self.feature_log_ratios(X[start : start + CHUNK_ROWS]))
            for start in range(0, len(X), CHUNK_ROWS)
        ]
        return np.concatenate(parts)

    def score(self, x: np.ndarray) -> float:
        """Log-ratio score of one point"""
        return float(self.score_many(np.asarray(x, dtype=np.float64).reshape(1, -1))[0])

    @staticmethod
    def _sum_features(contributions: np.ndarray) -> np.ndarray:
        # accumulate column by column so each row's sum is independent of the batch
        total = np.zeros(contributions.shape[0], dtype=np.float64)
        for column in contributions.T:
            total += column
        return total
