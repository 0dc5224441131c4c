"""
Model artifact persistence

A trained classifier is stored as one JSON document. Floats are written in
shortest round-trip form, so a reloaded classifier predicts bit-identically.
"""

import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from ..config import NPConfig, ThresholdRule, Variant
from ..density import ScoreModelFactory
from ..errors import ArtifactError, ConfigError
from .classifier import NPClassifier

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"


class ModelArtifactFile(BaseModel):
    """On-disk representation of an NPClassifier"""
    schema_version: str = SCHEMA_VERSION
    created_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    variant: str
    alpha: float
    delta1: float
    delta3: float
    q_quantile: float
    seed: int
    threshold_rule: str
    swap_classes: bool = False
    config: Dict[str, Any]
    selected: List[int]
    feature_names: List[str]
    model: Dict[str, Any]
    c_hat: float
    k_used: int
    m3: int
    feasible: bool
    s03_scores: List[float]
    fingerprint: Dict[str, Any] = Field(default_factory=dict)

    def to_classifier(self) -> NPClassifier:
        """Rebuild the classifier"""
        if self.schema_version != SCHEMA_VERSION:
            raise ArtifactError(
                f"Unsupported artifact schema {self.schema_version!r}, expected {SCHEMA_VERSION!r}"
            )
        try:
            config = NPConfig.from_dict(self.config)
        except ConfigError as e:
            raise ArtifactError(f"Invalid configuration in artifact: {e}") from e

        model = ScoreModelFactory.from_params(self.model)
        if model.selected.tolist() != self.selected:
            raise ArtifactError("Selected features disagree with the stored score model")
        if len(self.feature_names) != model.d:
            raise ArtifactError(f"{len(self.feature_names)} feature names for a {model.d}-feature model")

        scores = np.asarray(self.s03_scores, dtype=np.float64)
        scores.setflags(write=False)
        if scores.size != self.m3 or not 1 <= self.k_used <= self.m3:
            raise ArtifactError("Stored left-out scores are inconsistent with m3/k_used")
        return NPClassifier(
            model=model,
            c_hat=self.c_hat,
            k_used=self.k_used,
            m3=self.m3,
            alpha=self.alpha,
            delta3=self.delta3,
            variant=Variant(self.variant),
            feasible=self.feasible,
            s03_scores=scores,
            threshold_rule=ThresholdRule(self.threshold_rule),
            config=config,
            feature_names=tuple(self.feature_names),
            fingerprint=dict(self.fingerprint),
        )

    @classmethod
    def from_classifier(cls, clf: NPClassifier) -> "ModelArtifactFile":
        cfg = clf.config
        return cls(
            variant=clf.variant.value,
            alpha=clf.alpha,
            delta1=cfg.delta1,
            delta3=clf.delta3,
            q_quantile=cfg.q_quantile,
            seed=cfg.seed,
            threshold_rule=clf.threshold_rule.value,
            swap_classes=cfg.swap_classes,
            config=cfg.to_dict(),
            selected=clf.selected.tolist(),
            feature_names=list(clf.feature_names),
            model=clf.model.to_params(),
            c_hat=clf.c_hat,
            k_used=clf.k_used,
            m3=clf.m3,
            feasible=clf.feasible,
            s03_scores=clf.s03_scores.tolist(),
            fingerprint=clf.fingerprint,
        )


def save_model(clf: NPClassifier, path: Path) -> Path:
    """Write the classifier as JSON"""
    artifact = ModelArtifactFile.from_classifier(clf)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(artifact.model_dump_json(indent=2), encoding="utf-8")
    logger.info("Saved %s model to %s", clf.variant.value, path)
    return path


def load_model(path: Path) -> NPClassifier:
    """Read a classifier written by save_model"""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ArtifactError(f"Cannot read model file {path}: {e}") from e
    try:
        artifact = ModelArtifactFile.model_validate_json(text)
    except ValidationError as e:
        raise ArtifactError(f"Malformed model file {path}: {e.error_count()} validation error(s)") from e
    return artifact.to_classifier()
