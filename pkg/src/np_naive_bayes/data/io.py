"""
CSV ingestion and prediction output

Comma-separated, header row, UTF-8. Labels are mapped through an explicit
class-0 value; feature columns are bound by header name.
"""

import logging
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..errors import ArtifactError, DataValidationError
from .dataset import LabeledDataset

logger = logging.getLogger(__name__)


def _read(path: Path) -> pd.DataFrame:
    try:
        return pd.read_csv(path, sep=",", encoding="utf-8")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataValidationError(f"Cannot read CSV {path}: {e}") from e


def _numeric_matrix(frame: pd.DataFrame, columns: Sequence[str]) -> np.ndarray:
    bad: List[str] = []
    converted = {}
    for name in columns:
        column = pd.to_numeric(frame[name], errors="coerce")
        if (column.isna() & frame[name].notna()).any():
            bad.append(name)
        converted[name] = column
    if bad:
        raise DataValidationError(f"Non-numeric values in feature column(s): {', '.join(bad)}", bad)
    if not columns:
        return np.empty((len(frame), 0), dtype=np.float64)
    return pd.DataFrame(converted)[list(columns)].to_numpy(dtype=np.float64)


def _label_key(value: Any, numeric: bool) -> Any:
    """A user-supplied label value in the label column's terms"""
    if not numeric:
        return str(value).strip()
    try:
        return float(value)
    except (TypeError, ValueError) as e:
        raise DataValidationError(f"Label value '{value}' is not a number but the label column is numeric") from e


def map_labels(
    values: pd.Series, class0_value: Any, class1_value: Optional[Any] = None
) -> np.ndarray:
    """
    Map raw label values to {0, 1} without guessing

    A numeric label column is compared numerically, so 0, 0.0 and "0" name
    the same class; any other column is compared as stripped text.
    """
    numeric = pd.api.types.is_numeric_dtype(values) and not pd.api.types.is_bool_dtype(values)
    keys = values if numeric else values.astype(str).str.strip()
    is0 = keys == _label_key(class0_value, numeric)
    if class1_value is not None:
        is1 = keys == _label_key(class1_value, numeric)
        unknown = sorted({str(v) for v in keys[~(is0 | is1)]})
        if unknown:
            raise DataValidationError(f"Label values outside the two-value mapping: {unknown[:5]}")
    else:
        others = sorted({str(v) for v in keys[~is0]})
        if len(others) > 1:
            raise DataValidationError(
                f"Label column has {len(others)} values besides class-0 value "
                f"'{class0_value}': {others[:5]}; pass the class-1 value explicitly"
            )
    return np.where(is0.to_numpy(), 0, 1).astype(np.int8)


def read_labeled_csv(
    path: Path,
    label_col: str,
    class0_value: str,
    class1_value: Optional[str] = None,
    feature_cols: Optional[Sequence[str]] = None,
) -> LabeledDataset:
    """Read a training/evaluation CSV into a LabeledDataset"""
    frame = _read(path)
    if label_col not in frame.columns:
        raise DataValidationError(f"Label column '{label_col}' not found in {path}")
    names = list(feature_cols) if feature_cols else [c for c in frame.columns if c != label_col]
    missing = [c for c in names if c not in frame.columns]
    if missing:
        raise DataValidationError(f"Feature column(s) not found: {missing}")

    features = _numeric_matrix(frame, names)
    labels = map_labels(frame[label_col], class0_value, class1_value)
    logger.info("Read %d rows x %d features from %s", features.shape[0], features.shape[1], path)
    return LabeledDataset(features, labels, tuple(str(c) for c in names))


def read_feature_csv(path: Path, feature_names: Sequence[str]) -> Tuple[np.ndarray, pd.Index]:
    """Read prediction input, binding columns to the model's feature names by header"""
    frame = _read(path)
    missing = [c for c in feature_names if c not in frame.columns]
    if missing:
        raise ArtifactError(
            f"Input is missing {len(missing)} model feature column(s), e.g. {missing[:5]}"
        )
    return _numeric_matrix(frame, list(feature_names)), frame.index


def write_predictions(
    path: Path, row_index: Sequence[int], scores: np.ndarray, predictions: np.ndarray
) -> None:
    """Write (row_index, score, prediction); floats keep shortest round-trip decimals"""
    frame = pd.DataFrame(
        {
            "row_index": np.asarray(row_index, dtype=np.int64),
            "score": np.asarray(scores, dtype=np.float64),
            "prediction": np.asarray(predictions, dtype=np.int8),
        }
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
