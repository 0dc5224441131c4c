"""
Shared fixtures for the np-naive-bayes test suite
"""

from pathlib import Path
from typing import Callable

import numpy as np
import pandas as pd
import pytest

from np_naive_bayes.config import NPConfig, Variant
from np_naive_bayes.data import LabeledDataset
from np_naive_bayes.sim import gen_example1


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    """Keep NP_* variables from the host out of configuration tests"""
    for name in [
        "NP_ALPHA", "NP_DELTA1", "NP_DELTA3", "NP_Q", "NP_SEED", "NP_KERNEL", "NP_BANDWIDTH",
        "NP_TTEST", "NP_PERMUTATIONS", "NP_THRESHOLD_RULE", "NP_SWAP_CLASSES", "NP_VARIANT",
        "NP_REPS", "NP_TEST_PER_CLASS", "NP_THREADS", "NP_KDE_DRAWS", "LOG_LEVEL",
    ]:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def make_example1() -> Callable[..., LabeledDataset]:
    """Mean-shift training data: class 1 shifted by 0.5 in the first ten coordinates"""

    def _make(m: int = 400, n: int = 400, d: int = 10, seed: int = 7) -> LabeledDataset:
        gen = np.random.default_rng(seed)
        return LabeledDataset.from_classes(gen_example1(d, m, 0, gen), gen_example1(d, n, 1, gen))

    return _make


@pytest.fixture
def example1_data(make_example1) -> LabeledDataset:
    return make_example1()


@pytest.fixture
def pn2_config() -> NPConfig:
    return NPConfig(seed=11).with_variant(Variant.PN2)


@pytest.fixture
def write_csv(tmp_path: Path) -> Callable[..., Path]:
    """Write a LabeledDataset as a CSV with string labels neg/pos"""

    def _write(data: LabeledDataset, name: str = "train.csv", label_col: str = "label") -> Path:
        frame = pd.DataFrame(data.features, columns=list(data.names()))
        frame[label_col] = np.where(data.labels == 0, "neg", "pos")
        path = tmp_path / name
        frame.to_csv(path, index=False)
        return path

    return _write
