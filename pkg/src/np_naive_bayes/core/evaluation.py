"""
Population type I error of a fitted classifier

Closed form for affine scores under an independent Gaussian class-0 law,
Monte Carlo over fresh draws otherwise.
"""

import logging
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import ndtr

from ..density import ParametricScoreModel
from ..errors import DomainError
from .classifier import NPClassifier

logger = logging.getLogger(__name__)

Sampler = Callable[[int, np.random.Generator], np.ndarray]

MC_CHUNK = 20_000


def analytic_type1_error(
    clf: NPClassifier,
    mean0: Union[float, np.ndarray],
    var0: Union[float, np.ndarray],
    threshold: Optional[float] = None,
) -> float:
    """
    P(score(X) >= threshold) for X ~ N(mean0, diag(var0))

    The score w'x + b is then normal with mean w'mean0 + b and variance
    sum_j w_j^2 var0_j.

    Args:
        clf: classifier with a parametric score model
        mean0: class-0 mean, scalar or length-d vector
        var0: class-0 per-coordinate variance, scalar or length-d vector
        threshold: defaults to clf.c_hat
    """
    if not isinstance(clf.model, ParametricScoreModel):
        raise DomainError("the closed-form type I error needs an affine (parametric) score")
    w, b = clf.model.coefficients()
    mean0 = np.broadcast_to(np.asarray(mean0, dtype=np.float64), w.shape)
    var0 = np.broadcast_to(np.asarray(var0, dtype=np.float64), w.shape)
    if np.any(var0 < 0.0):
        raise DomainError("class-0 variances must be nonnegative")

    c = clf.c_hat if threshold is None else threshold
    loc = float(w @ mean0 + b)
    scale = float(np.sqrt(np.sum(w * w * var0)))
    if scale == 0.0:
        return 1.0 if loc >= c else 0.0
    return float(ndtr((loc - c) / scale))


def mc_type1_error(
    clf: NPClassifier,
    sampler: Sampler,
    draws: int,
    rng: np.random.Generator,
    threshold: Optional[float] = None,
) -> float:
    """
    Fraction of fresh class-0 draws scoring at or above the threshold

    Args:
        sampler: (rows, rng) -> matrix of class-0 rows
        draws: total number of draws, taken in chunks
    """
    if draws < 1:
        raise DomainError(f"draws must be positive, got {draws}")
    c = clf.c_hat if threshold is None else threshold
    hits = 0
    remaining = draws
    while remaining > 0:
        rows = min(remaining, MC_CHUNK)
        hits += int(np.count_nonzero(clf.scores(sampler(rows, rng)) >= c))
        remaining -= rows
    return hits / draws
