"""Model files: one UTF-8 JSON document with full-precision floats."""

import json
import logging
from pathlib import Path

import numpy as np

from apps.core.exceptions import ArtifactSieveError, ModelFormatError
from apps.core.jsonl import format_errors
from apps.features.vectorizer import Vocabulary

from .linear import FORMAT_VERSION, LinearModel
from .serializers import ModelFileSerializer
from .training import TrainConfig

logger = logging.getLogger(__name__)


def save_model(model, path):
    payload = {
        "format_version": model.format_version,
        "config": model.config.as_dict(),
        "bias": float(model.bias),
        "vocabulary": list(model.vocabulary.terms),
        "weights": model.weights.tolist(),
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, ensure_ascii=False)
    logger.info("saved model with %d n-grams to %s", len(model.vocabulary), path)


def load_model(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read model {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"model {path} is not UTF-8") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model {path} is truncated or corrupt ({exc.msg})") from exc
    if not isinstance(payload, dict):
        raise ModelFormatError(f"model {path} is not a JSON object")

    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"model {path} has format version {version}, this build reads version {FORMAT_VERSION}"
        )
    serializer = ModelFileSerializer(data=payload)
    if not serializer.is_valid():
        raise ModelFormatError(f"model {path}: {format_errors(serializer.errors)}")
    data = serializer.validated_data

    try:
        config = TrainConfig(**data["config"])
        vocabulary = Vocabulary(
            terms=data["vocabulary"],
            n_min=config.n_min,
            n_max=config.n_max,
            min_df=config.min_df,
        )
        return LinearModel(
            weights=np.array(data["weights"], dtype=np.float64),
            bias=float(data["bias"]),
            vocabulary=vocabulary,
            config=config,
            format_version=data["format_version"],
        )
    except (ArtifactSieveError, ValueError) as exc:
        raise ModelFormatError(f"model {path}: {exc}") from exc
