"""
Synthetic two-class designs

Both designs put the signal in the first ten coordinates; class 0 is the
standard normal in every design.
"""

import math
from enum import Enum
from typing import Callable, Tuple, Union

import numpy as np

from ..errors import DomainError

SIGNAL_DIMS = 10
SIGNAL = tuple(range(SIGNAL_DIMS))

EX1_SHIFT = 0.5
EX2_CENTER = 3.0 / math.sqrt(10.0)
EX2_SIGNAL_VAR = 0.1

Seed = Union[int, np.random.Generator, np.random.SeedSequence]
Sampler = Callable[[int, np.random.Generator], np.ndarray]


class Example(Enum):
    """Simulation design"""
    EX1_MEAN_SHIFT = "ex1_mean_shift"
    EX2_MIXTURE = "ex2_mixture"

    @classmethod
    def from_id(cls, value: Union[int, str]) -> "Example":
        """Accept 1/2 as well as the enum values"""
        aliases = {"1": cls.EX1_MEAN_SHIFT, "2": cls.EX2_MIXTURE}
        key = str(value)
        return aliases[key] if key in aliases else cls(key)


def _check(d: int, n_rows: int, label: int) -> None:
    if d < SIGNAL_DIMS:
        raise DomainError(f"d must be >= {SIGNAL_DIMS}, got {d}")
    if n_rows < 0:
        raise DomainError(f"n_rows must be nonnegative, got {n_rows}")
    if label not in (0, 1):
        raise DomainError(f"label must be 0 or 1, got {label}")


def gen_example1(d: int, n_rows: int, label: int, seed: Seed) -> np.ndarray:
    """Class 1 ~ N(0.5 (1_10, 0_{d-10}), I_d); class 0 ~ N(0, I_d)"""
    _check(d, n_rows, label)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n_rows, d))
    if label == 1:
        X[:, :SIGNAL_DIMS] += EX1_SHIFT
    return X


def gen_example2_with_components(
    d: int, n_rows: int, label: int, seed: Seed
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Example-2 rows plus the mixture component of each row

    Class 1 is the equal mixture of N(a, S) and N(-a, S) with
    a = (3/sqrt(10) 1_10, 0) and S = diag(0.1 I_10, I_{d-10}); the component
    vector holds +1/-1 (all zeros for class 0).
    """
    _check(d, n_rows, label)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n_rows, d))
    if label == 0:
        return X, np.zeros(n_rows, dtype=np.int8)
    signs = np.where(rng.random(n_rows) < 0.5, 1, -1).astype(np.int8)
    X[:, :SIGNAL_DIMS] = X[:, :SIGNAL_DIMS] * math.sqrt(EX2_SIGNAL_VAR) + signs[:, None] * EX2_CENTER
    return X, signs


def gen_example2(d: int, n_rows: int, label: int, seed: Seed) -> np.ndarray:
    """Class 1 ~ symmetric two-component normal mixture; class 0 ~ N(0, I_d)"""
    return gen_example2_with_components(d, n_rows, label, seed)[0]


def generate(example: Example, d: int, n_rows: int, label: int, seed: Seed) -> np.ndarray:
    if example is Example.EX1_MEAN_SHIFT:
        return gen_example1(d, n_rows, label, seed)
    return gen_example2(d, n_rows, label, seed)


def sampler(example: Example, d: int, label: int) -> Sampler:
    """(rows, rng) -> draws of one class"""
    return lambda rows, rng: generate(example, d, rows, label, rng)
