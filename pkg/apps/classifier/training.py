"""
Training of the linear hinge-loss classifier.

The optimizer is Pegasos: epoch-wise stochastic subgradient descent on the
L2-regularized hinge loss with step size ``1 / (lambda * t)``. The weight
vector is kept as ``scale * v`` so the shrink step of every update is O(1)
and each update only touches the non-zero features of one line. The bias is
the weight of a constant feature and is regularized like the others.
"""

import logging
import time
from dataclasses import asdict, dataclass

import numpy as np

from apps.autolabel.datasets import stratified_sample
from apps.autolabel.labels import Label
from apps.core.exceptions import ConfigurationError, DatasetError
from apps.features.vectorizer import build_vocabulary, vectorize_many
from apps.preprocess.tokenizer import tokenize_line

from .linear import LinearModel

logger = logging.getLogger(__name__)

SAMPLE_STREAM = 0
SHUFFLE_STREAM = 1


@dataclass(frozen=True)
class TrainConfig:
    C: float = 1.0
    epochs: int = 10
    seed: int = 0
    sample_fraction: float = 0.4
    n_min: int = 1
    n_max: int = 3
    min_df: int = 1

    def __post_init__(self):
        if not self.C > 0:
            raise ConfigurationError(f"C must be positive, got {self.C}")
        if self.epochs < 1:
            raise ConfigurationError(f"epochs must be positive, got {self.epochs}")
        if not 0 < self.sample_fraction <= 1:
            raise ConfigurationError(
                f"sample_fraction must be in (0, 1], got {self.sample_fraction}"
            )
        if not 1 <= self.n_min <= self.n_max:
            raise ConfigurationError(f"invalid n-gram range {self.n_min}..{self.n_max}")
        if self.min_df < 1:
            raise ConfigurationError(f"min_df must be at least 1, got {self.min_df}")

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class TrainingStats:
    lines_used: int
    vocabulary_size: int
    epochs: int
    objective: float
    seconds: float

    def as_dict(self):
        return asdict(self)


def _seed(cfg, stream):
    return np.random.SeedSequence([cfg.seed, stream])


def train(ds, cfg=None):
    """Fit a LinearModel on ``ds``; Artifact is the positive class."""
    cfg = cfg or TrainConfig()
    if not ds.n_artifact or not ds.n_natural:
        raise DatasetError("cannot train on single-class dataset")
    started = time.perf_counter()

    sample = stratified_sample(ds, cfg.sample_fraction, _seed(cfg, SAMPLE_STREAM))
    vocabulary = build_vocabulary(sample, cfg.n_min, cfg.n_max, cfg.min_df)
    if not len(vocabulary):
        raise DatasetError("cannot train with an empty vocabulary")
    matrix = vectorize_many([tokenize_line(text) for text in sample.texts], vocabulary)
    targets = np.array(
        [1.0 if label == Label.ARTIFACT else -1.0 for label in sample.labels]
    )

    weights, bias = _pegasos(matrix, targets, cfg)
    objective = _objective(matrix, targets, weights, bias, cfg)
    stats = TrainingStats(
        lines_used=len(sample),
        vocabulary_size=len(vocabulary),
        epochs=cfg.epochs,
        objective=objective,
        seconds=time.perf_counter() - started,
    )
    logger.info(
        "trained on %d lines, %d n-grams, %d epochs in %.2fs (objective %.4f)",
        stats.lines_used,
        stats.vocabulary_size,
        stats.epochs,
        stats.seconds,
        stats.objective,
    )
    return LinearModel(
        weights=weights, bias=bias, vocabulary=vocabulary, config=cfg, stats=stats
    )


def _pegasos(matrix, targets, cfg):
    n_lines, dimension = matrix.shape
    lam = 1.0 / (cfg.C * n_lines)
    rng = np.random.default_rng(_seed(cfg, SHUFFLE_STREAM))
    indptr, indices, data = matrix.indptr, matrix.indices, matrix.data

    # v[-1] is the bias feature.
    v = np.zeros(dimension + 1)
    scale = 1.0
    step = 0
    for _ in range(cfg.epochs):
        for i in rng.permutation(n_lines).tolist():
            step += 1
            eta = 1.0 / (lam * step)
            lo, hi = indptr[i], indptr[i + 1]
            columns, values = indices[lo:hi], data[lo:hi]
            y = targets[i]
            margin = y * scale * (float(v[columns] @ values) + v[-1])

            shrink = 1.0 - eta * lam
            if shrink <= 0.0:
                v[:] = 0.0
                scale = 1.0
            else:
                scale *= shrink
            if margin < 1.0:
                update = eta * y / scale
                v[columns] += update * values
                v[-1] += update
        if scale < 1e-9:
            v *= scale
            scale = 1.0

    weights = scale * v[:-1]
    return weights, float(scale * v[-1])


def _objective(matrix, targets, weights, bias, cfg):
    lam = 1.0 / (cfg.C * matrix.shape[0])
    margins = targets * (matrix @ weights + bias)
    hinge = np.maximum(0.0, 1.0 - margins).mean()
    return float(0.5 * lam * (weights @ weights + bias * bias) + hinge)
