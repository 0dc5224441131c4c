"""
Neyman-Pearson plug-in classifier

Split the sample, optionally screen features, fit a density-ratio score and
threshold it at an order statistic of the left-out class-0 scores chosen so
that the type I error stays below alpha with probability at least 1 - delta3.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..config import NPConfig, ScreeningMethod, ThresholdRule, Variant
from ..data.dataset import LabeledDataset, require_valid
from ..data.split import SCREEN_STREAM, SplitPlan, derived_seed, make_split
from ..density import ScoreModel, ScoreModelFactory
from ..errors import DomainError
from ..numerics import ThresholdParams, classical_rank, k_chern, k_exact, k_min, minimal_m3
from ..screening import ScreeningResult, screen

logger = logging.getLogger(__name__)


def threshold_rank(rule: ThresholdRule, alpha: float, delta3: float, m3: int) -> Tuple[int, bool]:
    """
    Rank k of the threshold order statistic and whether it carries the guarantee

    When the rule has no admissible rank the largest order statistic is used
    and the second value is False.
    """
    params = ThresholdParams(alpha=alpha, delta3=delta3, m3=m3)
    if rule is ThresholdRule.KMIN:
        k: Optional[int] = k_min(params)
    elif rule is ThresholdRule.KCHERN:
        k = k_chern(params)
    elif rule is ThresholdRule.EXACT_BETA:
        k = k_exact(params)
    else:
        raise DomainError(f"unknown threshold rule: {rule}")

    if k is None or k > m3:
        return m3, False
    return k, True


def order_statistic(sorted_scores: np.ndarray, k: int) -> float:
    """k-th smallest of already sorted scores (1-based)"""
    if not 1 <= k <= sorted_scores.size:
        raise DomainError(f"rank {k} outside 1..{sorted_scores.size}")
    return float(sorted_scores[k - 1])


def classical_quantile_threshold(scores: np.ndarray, alpha: float) -> float:
    """
    The ceil(m3 (1 - alpha))-th order statistic

    This estimates the 1 - alpha quantile of the class-0 scores but carries no
    high-probability bound on the type I error.
    """
    scores = np.sort(np.asarray(scores, dtype=np.float64))
    if scores.size == 0:
        raise DomainError("classical threshold needs at least one score")
    return order_statistic(scores, classical_rank(scores.size, alpha))


@dataclass(frozen=True, eq=False)
class NPClassifier:
    """Fitted score model plus an order-statistic threshold c_hat"""
    model: ScoreModel
    c_hat: float
    k_used: int
    m3: int
    alpha: float
    delta3: float
    variant: Variant
    feasible: bool
    s03_scores: np.ndarray
    threshold_rule: ThresholdRule = ThresholdRule.KMIN
    config: NPConfig = field(default_factory=NPConfig)
    feature_names: Tuple[str, ...] = ()
    fingerprint: Dict[str, Any] = field(default_factory=dict)
    screening: Optional[ScreeningResult] = None

    @property
    def selected(self) -> np.ndarray:
        return self.model.selected

    @property
    def d(self) -> int:
        return self.model.d

    @property
    def swapped(self) -> bool:
        """Trained with class roles exchanged; predictions are still in original labels"""
        return self.config.swap_classes

    def scores(self, X: np.ndarray) -> np.ndarray:
        """Log-ratio scores of the rows of X"""
        return self.model.score_many(X)

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        """Labels for the rows of X; a score equal to c_hat counts as above it"""
        above = (self.scores(X) >= self.c_hat).astype(np.int8)
        return 1 - above if self.swapped else above

    def predict(self, x: np.ndarray) -> int:
        above = int(self.model.score(x) >= self.c_hat)
        return 1 - above if self.swapped else above

    def classical_threshold(self) -> float:
        """Unguaranteed empirical-quantile threshold on the same left-out scores"""
        return classical_quantile_threshold(self.s03_scores, self.alpha)

    def with_threshold(self, c_hat: float) -> "NPClassifier":
        """Copy that thresholds the same scores at c_hat"""
        return replace(self, c_hat=float(c_hat))

    def rethreshold(
        self,
        alpha: float,
        delta3: Optional[float] = None,
        rule: Optional[ThresholdRule] = None,
    ) -> "NPClassifier":
        """Recompute k and c_hat from the stored left-out scores without refitting"""
        delta3 = self.delta3 if delta3 is None else delta3
        rule = self.threshold_rule if rule is None else rule
        k, feasible = threshold_rank(rule, alpha, delta3, self.m3)
        if not feasible:
            _warn_infeasible(alpha, delta3, self.m3, rule)
        return replace(
            self,
            alpha=alpha,
            delta3=delta3,
            threshold_rule=rule,
            k_used=k,
            feasible=feasible,
            c_hat=order_statistic(self.s03_scores, k),
        )


def _warn_infeasible(alpha: float, delta3: float, m3: int, rule: ThresholdRule) -> None:
    logger.warning(
        "No order statistic satisfies the %s rule at alpha=%s, delta3=%s with m3=%d; "
        "using the largest score (type I guarantee void). m3 >= %d is sufficient.",
        rule.value,
        alpha,
        delta3,
        m3,
        minimal_m3(alpha, delta3),
    )


def train(data: LabeledDataset, cfg: NPConfig, plan: Optional[SplitPlan] = None) -> NPClassifier:
    """
    Train an NP classifier

    Args:
        data: labeled training data; class 0 carries the type I constraint
        cfg: NP configuration
        plan: precomputed split, mainly for tests

    Returns:
        Fitted classifier

    Raises:
        DataValidationError: If the data is unusable
        InsufficientSampleError: If a subsample would be empty
        ScreeningError: If no feature passes screening
        ZeroVarianceError: If a selected feature has no spread
    """
    require_valid(data)
    fingerprint = data.fingerprint()
    if cfg.swap_classes:
        data = data.swapped()
    names = data.names()

    if plan is None:
        plan = make_split(data, cfg)

    screened: Optional[ScreeningResult] = None
    if cfg.screening is ScreeningMethod.NONE:
        selected = np.arange(data.d)
    else:
        screened = screen(data.rows(plan.s0_1), data.rows(plan.s1_1), cfg, seed=derived_seed(cfg.seed, SCREEN_STREAM))
        selected = screened.selected
        logger.info("Screening kept %d of %d features", screened.n_selected, data.d)

    model = ScoreModelFactory.create_model(cfg, data.rows(plan.s0_2), data.rows(plan.s1_2), selected, names)
    s03_scores = np.sort(model.score_many(data.rows(plan.s0_3)))

    k, feasible = threshold_rank(cfg.threshold_rule, cfg.alpha, cfg.delta3, plan.m3)
    if not feasible:
        _warn_infeasible(cfg.alpha, cfg.delta3, plan.m3, cfg.threshold_rule)
    s03_scores.setflags(write=False)

    clf = NPClassifier(
        model=model,
        c_hat=order_statistic(s03_scores, k),
        k_used=k,
        m3=plan.m3,
        alpha=cfg.alpha,
        delta3=cfg.delta3,
        variant=cfg.variant,
        feasible=feasible,
        s03_scores=s03_scores,
        threshold_rule=cfg.threshold_rule,
        config=cfg,
        feature_names=tuple(names),
        fingerprint=fingerprint,
        screening=screened,
    )
    logger.debug("trained %s: k=%d of m3=%d, c_hat=%.6g", cfg.variant.value, k, plan.m3, clf.c_hat)
    return clf


def empirical_errors(clf: NPClassifier, test: LabeledDataset) -> Tuple[Optional[float], Optional[float]]:
    """
    Test-set type I and type II error rates

    r0 is the fraction of class-0 rows predicted 1 and r1 the fraction of
    class-1 rows predicted 0. A class absent from the test set gives None.
    """
    if test.d != clf.d:
        raise DomainError(f"test data has {test.d} features, the classifier expects {clf.d}")
    class0, class1 = test.class_rows(0), test.class_rows(1)
    r0 = float(clf.predict_many(class0).mean()) if len(class0) else None
    r1 = float(1.0 - clf.predict_many(class1).mean()) if len(class1) else None
    return r0, r1
