"""
Labeled dataset representation and validation
"""

import hashlib
import logging
import warnings
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DataValidationError

logger = logging.getLogger(__name__)

MAX_CELL_ISSUES = 20
CONSTANT_FEATURE = "constant feature"


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Feature matrix with binary labels; class 0 is the class whose error is controlled"""
    features: np.ndarray
    labels: np.ndarray
    feature_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        features = np.ascontiguousarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels)
        if features.ndim != 2:
            raise DataValidationError(f"features must be a 2-D matrix, got shape {features.shape}")
        if labels.ndim != 1 or labels.shape[0] != features.shape[0]:
            raise DataValidationError(
                f"labels must be a vector of length {features.shape[0]}, got shape {labels.shape}"
            )
        if labels.size and not np.isin(labels, (0, 1)).all():
            raise DataValidationError("labels must be exactly 0 or 1")
        if self.feature_names is not None and len(self.feature_names) != features.shape[1]:
            raise DataValidationError(
                f"{len(self.feature_names)} feature names for {features.shape[1]} columns"
            )
        features.setflags(write=False)
        labels = labels.astype(np.int8)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        if self.feature_names is not None:
            object.__setattr__(self, "feature_names", tuple(self.feature_names))

    @property
    def n_rows(self) -> int:
        return int(self.features.shape[0])

    @property
    def d(self) -> int:
        return int(self.features.shape[1])

    @property
    def n_class0(self) -> int:
        return int(np.count_nonzero(self.labels == 0))

    @property
    def n_class1(self) -> int:
        return int(np.count_nonzero(self.labels == 1))

    def names(self) -> Tuple[str, ...]:
        """Feature names, defaulting to x1..xd"""
        if self.feature_names is not None:
            return self.feature_names
        return tuple(f"x{j + 1}" for j in range(self.d))

    def class_rows(self, label: int) -> np.ndarray:
        """Feature rows of one class, in dataset order"""
        return self.features[self.labels == label]

    def rows(self, index: np.ndarray) -> np.ndarray:
        return self.features[np.asarray(index, dtype=np.intp)]

    def swapped(self) -> "LabeledDataset":
        """Same data with the class roles exchanged"""
        return LabeledDataset(self.features, 1 - self.labels, self.feature_names)

    def fingerprint(self) -> Dict[str, Any]:
        """Row counts, dimension and a content hash of features and labels"""
        digest = hashlib.sha256()
        digest.update(np.ascontiguousarray(self.features).tobytes())
        digest.update(np.ascontiguousarray(self.labels).tobytes())
        return {
            "n_class0": self.n_class0,
            "n_class1": self.n_class1,
            "d": self.d,
            "sha256": digest.hexdigest(),
        }

    @classmethod
    def from_classes(
        cls,
        class0: np.ndarray,
        class1: np.ndarray,
        feature_names: Optional[Sequence[str]] = None,
    ) -> "LabeledDataset":
        """Stack class-0 rows above class-1 rows"""
        class0 = np.asarray(class0, dtype=np.float64)
        class1 = np.asarray(class1, dtype=np.float64)
        labels = np.concatenate([np.zeros(len(class0), dtype=np.int8), np.ones(len(class1), dtype=np.int8)])
        names = tuple(feature_names) if feature_names is not None else None
        return cls(np.vstack([class0, class1]), labels, names)


def validate(data: LabeledDataset) -> List[str]:
    """
    Report problems that would make a training run meaningless

    Returns an empty list for clean data. Non-finite cells are located by
    (row, column); only the first few are listed individually.
    """
    issues: List[str] = []
    names = data.names()

    bad_rows, bad_cols = np.nonzero(~np.isfinite(data.features))
    for row, col in list(zip(bad_rows, bad_cols))[:MAX_CELL_ISSUES]:
        value = data.features[row, col]
        kind = "NaN" if np.isnan(value) else "Inf"
        issues.append(f"{kind} at (row {int(row)}, column {int(col)} '{names[col]}')")
    if len(bad_rows) > MAX_CELL_ISSUES:
        issues.append(f"... and {len(bad_rows) - MAX_CELL_ISSUES} more non-finite cells")

    if data.n_rows > 1:
        with warnings.catch_warnings(), np.errstate(invalid="ignore"):
            warnings.simplefilter("ignore", RuntimeWarning)
            finite = np.where(np.isfinite(data.features), data.features, np.nan)
            spread = np.nanmax(finite, axis=0) - np.nanmin(finite, axis=0)
        for col in np.flatnonzero(spread == 0.0):
            issues.append(f"{CONSTANT_FEATURE} (column {int(col)} '{names[col]}')")

    if data.n_class0 == 0 or data.n_class1 == 0:
        present = 1 if data.n_class1 else 0
        issues.append(f"single-class labels: every row has label {present}")

    return issues


def require_valid(data: LabeledDataset) -> None:
    """
    Raise DataValidationError on non-finite cells or a missing class

    Constant features are only logged: screening drops them and the
    parametric fit reports them by name.
    """
    issues = validate(data)
    fatal = [issue for issue in issues if not issue.startswith(CONSTANT_FEATURE)]
    for issue in issues:
        if issue.startswith(CONSTANT_FEATURE):
            logger.warning("%s", issue)
    if fatal:
        raise DataValidationError(f"{len(fatal)} data issue(s): {fatal[0]}", fatal)
