"""
Marginal two-sample statistics for feature screening
"""

import numpy as np

from ..config import TTestKind
from ..errors import InsufficientSampleError

# stands in for |t| = inf when both classes have zero variance but different means
T_SENTINEL = float(np.finfo(np.float64).max)


def _check_pair(class0: np.ndarray, class1: np.ndarray, min_rows: int) -> None:
    if class0.ndim != 2 or class1.ndim != 2 or class0.shape[1] != class1.shape[1]:
        raise ValueError(f"class matrices must share d, got {class0.shape} and {class1.shape}")
    if len(class0) < min_rows or len(class1) < min_rows:
        raise InsufficientSampleError(
            f"need at least {min_rows} rows per class, got {len(class0)} and {len(class1)}",
            required=min_rows,
        )


def ks_sweep(pooled: np.ndarray, is_class0: np.ndarray) -> np.ndarray:
    """
    sup_x |F0(x) - F1(x)| per column for a labelled pooled sample

    Sorts each column once and compares the two normalised ecdfs at the
    last position of every run of tied values.
    """
    is_class0 = np.asarray(is_class0, dtype=bool)
    m = int(np.count_nonzero(is_class0))
    n = is_class0.size - m
    order = np.argsort(pooled, axis=0, kind="stable")
    ordered = np.take_along_axis(pooled, order, axis=0)
    from0 = is_class0[order]

    ecdf0 = np.cumsum(from0, axis=0) / m
    ecdf1 = np.cumsum(~from0, axis=0) / n
    run_end = np.ones(ordered.shape, dtype=bool)
    run_end[:-1] = ordered[1:] != ordered[:-1]
    gaps = np.where(run_end, np.abs(ecdf0 - ecdf1), 0.0)
    return gaps.max(axis=0)


def d_statistics(class0: np.ndarray, class1: np.ndarray) -> np.ndarray:
    """Kolmogorov-Smirnov D_j for every feature j"""
    class0 = np.asarray(class0, dtype=np.float64)
    class1 = np.asarray(class1, dtype=np.float64)
    _check_pair(class0, class1, 1)
    pooled = np.vstack([class0, class1])
    labels = np.arange(len(pooled)) < len(class0)
    return ks_sweep(pooled, labels)


def t_statistics(
    class0: np.ndarray, class1: np.ndarray, kind: TTestKind = TTestKind.WELCH
) -> np.ndarray:
    """
    |t_j| comparing class-1 and class-0 means feature by feature

    Zero standard error gives 0 when the means agree and T_SENTINEL otherwise.
    """
    class0 = np.asarray(class0, dtype=np.float64)
    class1 = np.asarray(class1, dtype=np.float64)
    _check_pair(class0, class1, 2)
    m, n = len(class0), len(class1)
    diff = class1.mean(axis=0) - class0.mean(axis=0)
    var0 = class0.var(axis=0, ddof=1)
    var1 = class1.var(axis=0, ddof=1)
    if kind is TTestKind.WELCH:
        se = np.sqrt(var1 / n + var0 / m)
    else:
        pooled = ((n - 1) * var1 + (m - 1) * var0) / (n + m - 2)
        se = np.sqrt(pooled * (1.0 / n + 1.0 / m))

    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.abs(diff) / se
    zero_se = se == 0.0
    t[zero_se & (diff == 0.0)] = 0.0
    t[zero_se & (diff != 0.0)] = T_SENTINEL
    return t
