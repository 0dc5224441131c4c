"""
np-naive-bayes - Neyman-Pearson naive Bayes classification

Classifiers whose type I error stays below a target level alpha with
probability at least 1 - delta3, built on parametric or kernel naive Bayes
density ratios with optional marginal feature screening.
"""

__version__ = "0.1.0"
__author__ = "np-naive-bayes contributors"

from .config import AppConfig, NPConfig, SimSettings, Variant
from .core import NPClassifier, empirical_errors, load_model, save_model, train
from .data import LabeledDataset, read_labeled_csv
from .errors import NPError

__all__ = [
    "AppConfig",
    "LabeledDataset",
    "NPClassifier",
    "NPConfig",
    "NPError",
    "SimSettings",
    "Variant",
    "empirical_errors",
    "load_model",
    "read_labeled_csv",
    "save_model",
    "train",
]
