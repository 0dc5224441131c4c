"""
Five-way sample split

Class-1 rows go to S1_1 (screening) and S1_2 (estimation); class-0 rows go
to S0_1 (screening), S0_2 (estimation) and S0_3 (threshold).
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

from ..config import NPConfig, ScreeningMethod
from ..errors import InsufficientSampleError
from .dataset import LabeledDataset

logger = logging.getLogger(__name__)

# independent generator streams derived from one user seed
SPLIT_STREAM = 0
SCREEN_STREAM = 1


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """Generator for one named stream of a run seed"""
    return np.random.default_rng([seed, stream])


def derived_seed(seed: int, stream: int) -> int:
    """Integer seed for components that take a plain seed"""
    return int(stream_rng(seed, stream).integers(2**63))


def screening_size(d: int, delta1: float) -> int:
    """ceil(10 log(4d/delta1)), the screening subsample size before the class caps"""
    return math.ceil(10.0 * math.log(4.0 * d / delta1))


@dataclass(frozen=True, eq=False)
class SplitPlan:
    """Row indices of the five subsamples"""
    s1_1: np.ndarray
    s1_2: np.ndarray
    s0_1: np.ndarray
    s0_2: np.ndarray
    s0_3: np.ndarray

    @property
    def n1(self) -> int:
        return int(self.s1_1.size)

    @property
    def n2(self) -> int:
        return int(self.s1_2.size)

    @property
    def m1(self) -> int:
        return int(self.s0_1.size)

    @property
    def m2(self) -> int:
        return int(self.s0_2.size)

    @property
    def m3(self) -> int:
        return int(self.s0_3.size)

    def sizes(self) -> Dict[str, int]:
        return {"n1": self.n1, "n2": self.n2, "m1": self.m1, "m2": self.m2, "m3": self.m3}

    def same_as(self, other: "SplitPlan") -> bool:
        return all(
            np.array_equal(getattr(self, name), getattr(other, name))
            for name in ("s1_1", "s1_2", "s0_1", "s0_2", "s0_3")
        )


def split_sizes(m: int, n: int, d: int, delta1: float, screening: bool) -> Dict[str, int]:
    """
    Subsample sizes

    m1 = min(ceil(10 log(4d/delta1)), floor(m/4)), n1 = min(ceil(10 log(4d/delta1)), floor(n/2)),
    both zero without screening; m2 = floor(m/2) - m1, n2 = n - n1, m3 = m - floor(m/2).
    """
    if screening:
        if m < 8 or n < 4:
            raise InsufficientSampleError(
                f"screening needs at least 8 class-0 and 4 class-1 rows, got m={m}, n={n}",
                required=8 if m < 8 else 4,
            )
        base = screening_size(d, delta1)
        m1, n1 = min(base, m // 4), min(base, n // 2)
    else:
        m1 = n1 = 0
    sizes = {"n1": n1, "n2": n - n1, "m1": m1, "m2": m // 2 - m1, "m3": m - m // 2}
    if sizes["m2"] <= 0 or sizes["n2"] <= 0 or sizes["m3"] < 1:
        raise InsufficientSampleError(f"insufficient class sample for the split: {sizes}")
    return sizes


def make_split(data: LabeledDataset, cfg: NPConfig) -> SplitPlan:
    """Seeded within-class shuffle into the five subsamples"""
    m, n = data.n_class0, data.n_class1
    if m == 0 or n == 0:
        raise InsufficientSampleError(f"both classes are required, got m={m}, n={n}", required=1)
    sizes = split_sizes(m, n, data.d, cfg.delta1, cfg.screening is not ScreeningMethod.NONE)

    rng = stream_rng(cfg.seed, SPLIT_STREAM)
    class0 = rng.permutation(np.flatnonzero(data.labels == 0))
    class1 = rng.permutation(np.flatnonzero(data.labels == 1))

    m1, m2 = sizes["m1"], sizes["m2"]
    n1 = sizes["n1"]
    plan = SplitPlan(
        s1_1=np.sort(class1[:n1]),
        s1_2=np.sort(class1[n1:]),
        s0_1=np.sort(class0[:m1]),
        s0_2=np.sort(class0[m1 : m1 + m2]),
        s0_3=np.sort(class0[m1 + m2 :]),
    )
    logger.debug("split sizes %s", plan.sizes())
    return plan
