"""
Datasets, validation, CSV ingestion and the five-way sample split
"""

from .dataset import LabeledDataset, require_valid, validate
from .io import read_feature_csv, read_labeled_csv, write_predictions
from .split import SplitPlan, derived_seed, make_split, screening_size, split_sizes, stream_rng

__all__ = [
    "LabeledDataset",
    "SplitPlan",
    "derived_seed",
    "make_split",
    "read_feature_csv",
    "read_labeled_csv",
    "require_valid",
    "screening_size",
    "split_sizes",
    "stream_rng",
    "validate",
    "write_predictions",
]
