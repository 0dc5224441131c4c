"""
Marginal screening: statistic + cutoff -> selected feature set
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from ..config import NPConfig, ScreeningMethod
from ..errors import ConfigError, ScreeningError
from .cutoffs import permutation_cutoff, theoretical_tau
from .statistics import d_statistics, t_statistics

logger = logging.getLogger(__name__)


class CutoffKind(Enum):
    THEORETICAL_TAU = "theoretical_tau"
    PERMUTATION_Q = "permutation_q"


@dataclass(frozen=True, eq=False)
class ScreeningResult:
    """
    Selected features (0-based) are exactly those with stat_values >= cutoff,
    or stat_values > cutoff when strict is set
    """
    selected: np.ndarray
    stat_values: np.ndarray
    cutoff: float
    method: ScreeningMethod
    cutoff_kind: CutoffKind
    strict: bool = False

    @property
    def n_selected(self) -> int:
        return int(self.selected.size)

    def missed(self, signal: Iterable[int]) -> int:
        """Signal features that did not pass"""
        return len(set(signal) - set(self.selected.tolist()))

    def false_positives(self, signal: Iterable[int]) -> int:
        """Selected features outside the signal set"""
        return len(set(self.selected.tolist()) - set(signal))


def compute_statistics(class0: np.ndarray, class1: np.ndarray, cfg: NPConfig) -> np.ndarray:
    if cfg.screening is ScreeningMethod.DSTAT:
        return d_statistics(class0, class1)
    if cfg.screening is ScreeningMethod.TSTAT:
        return t_statistics(class0, class1, cfg.t_test)
    raise ConfigError("screening is disabled in this configuration")


def screen(
    class0: np.ndarray,
    class1: np.ndarray,
    cfg: NPConfig,
    seed: int,
    tau: Optional[float] = None,
    big_d: Optional[float] = None,
    allow_empty: bool = False,
) -> ScreeningResult:
    """
    Select features whose marginal statistic reaches the cutoff

    The cutoff is the permutation quantile unless tau is given, or big_d is
    given for D-statistics, in which case the lower end of the exact-recovery
    interval is used. An empty selection raises ScreeningError unless
    allow_empty is set.

    D-statistics take lattice values and must exceed a permutation cutoff
    strictly; every other pairing keeps ties at the cutoff.
    """
    stats = compute_statistics(class0, class1, cfg)

    if tau is not None:
        cutoff, kind = float(tau), CutoffKind.THEORETICAL_TAU
    elif big_d is not None:
        if cfg.screening is not ScreeningMethod.DSTAT:
            raise ConfigError("the exact-recovery cutoff is defined for D-statistics only")
        interval = theoretical_tau(stats.size, len(class1), len(class0), cfg.delta1, big_d)
        cutoff, kind = interval.low, CutoffKind.THEORETICAL_TAU
    else:
        cutoff = permutation_cutoff(
            class0, class1, cfg.screening, cfg.q_quantile, seed, cfg.permutations, cfg.t_test
        )
        kind = CutoffKind.PERMUTATION_Q

    strict = kind is CutoffKind.PERMUTATION_Q and cfg.screening is ScreeningMethod.DSTAT
    selected = np.flatnonzero(stats > cutoff if strict else stats >= cutoff)
    if selected.size == 0 and not allow_empty:
        raise ScreeningError(
            f"no features survive screening (cutoff {cutoff:.6g}, max statistic {stats.max():.6g})"
        )
    logger.debug("screening kept %d of %d features", selected.size, stats.size)
    return ScreeningResult(
        selected=selected,
        stat_values=stats,
        cutoff=cutoff,
        method=cfg.screening,
        cutoff_kind=kind,
        strict=strict,
    )
