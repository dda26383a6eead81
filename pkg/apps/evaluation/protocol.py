"""The measurement protocol: point evaluation, bootstrap intervals and learning curves."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from apps.autolabel.datasets import stratified_sample
from apps.autolabel.labels import Label
from apps.classifier.linear import decision_scores, label_for
from apps.classifier.training import TrainConfig, train
from apps.core.exceptions import ConfigurationError, DatasetError

from .metrics import ConfusionMatrix, confusion_matrix, f1_from_confusion, roc_auc

logger = logging.getLogger(__name__)

# ───────────────────────────────────
# 1. REPORTS
# ───────────────────────────────────


@dataclass(frozen=True)
class ConfidenceInterval:
    low: float
    high: float
    mean: float
    # Raw percentiles before widening; None when the interval was built directly.
    percentile_low: float = None
    percentile_high: float = None

    def __post_init__(self):
        if not self.low <= self.mean <= self.high:
            raise ValueError(f"interval [{self.low}, {self.high}] does not contain {self.mean}")

    @property
    def width(self):
        return self.high - self.low

    @property
    def widened(self):
        if self.percentile_low is None:
            return False
        return (self.percentile_low, self.percentile_high) != (self.low, self.high)

    def as_dict(self, prefix):
        payload = {f"{prefix}_low": self.low, f"{prefix}_high": self.high, f"{prefix}_mean": self.mean}
        if self.percentile_low is not None:
            payload.update(
                {
                    f"{prefix}_percentile_low": self.percentile_low,
                    f"{prefix}_percentile_high": self.percentile_high,
                    f"{prefix}_widened": self.widened,
                }
            )
        return payload


@dataclass(frozen=True)
class EvalReport:
    f1_macro: float
    roc_auc: float
    confusion: ConfusionMatrix
    n_lines: int
    ci: ConfidenceInterval = None
    auc_ci: ConfidenceInterval = None
    f1_samples: tuple = ()
    auc_samples: tuple = ()

    def as_dict(self):
        payload = {
            "f1_macro": self.f1_macro,
            "roc_auc": self.roc_auc,
            **self.confusion.as_dict(),
            "n_lines": self.n_lines,
            **(self.ci.as_dict("ci") if self.ci else {"ci_low": None, "ci_high": None, "ci_mean": None}),
        }
        if self.auc_ci:
            payload.update(self.auc_ci.as_dict("auc_ci"))
        if self.f1_samples:
            payload.update(f1_samples=list(self.f1_samples), auc_samples=list(self.auc_samples))
        return payload


def evaluate_model(model, ds):
    """Score every line of ``ds`` with ``model``; both classes must be present."""
    if not len(ds):
        raise DatasetError("cannot evaluate on an empty dataset")
    scores = decision_scores(model, ds.texts)
    predictions = [label_for(score) for score in scores.tolist()]
    confusion = confusion_matrix(ds.labels, predictions)
    return EvalReport(
        f1_macro=f1_from_confusion(confusion),
        roc_auc=roc_auc(scores, ds.labels),
        confusion=confusion,
        n_lines=len(ds),
    )


def _run(function, items, workers):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(function, items))
    return [function(item) for item in items]


# ───────────────────────────────────
# 2. BOOTSTRAP
# ───────────────────────────────────


@dataclass(frozen=True)
class BootstrapConfig:
    alpha: float = 0.95
    n: int = 100
    split: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ConfigurationError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.n < 1:
            raise ConfigurationError(f"n must be positive, got {self.n}")
        if not 0 < self.split < 1:
            raise ConfigurationError(f"split must be in (0, 1), got {self.split}")


def percentile_interval(values, alpha):
    """
    Percentile interval at ``(1-alpha)/2`` and ``1-(1-alpha)/2`` around the mean.

    The bounds are widened to the mean when a skewed sample puts the mean
    outside the percentile range; the raw percentiles are kept alongside.
    """
    values = np.asarray(values, dtype=np.float64)
    tail = (1 - alpha) / 2
    low, high = np.percentile(values, [100 * tail, 100 * (1 - tail)]).tolist()
    mean = math.fsum(values.tolist()) / len(values)
    return ConfidenceInterval(
        low=min(low, mean), high=max(high, mean), mean=mean, percentile_low=low, percentile_high=high
    )


def _line_split(ds, split, seed):
    rng = np.random.default_rng(seed)
    train_positions, test_positions = [], []
    for label in (Label.ARTIFACT, Label.NATURAL_LANGUAGE):
        members = ds.class_positions(label)
        order = rng.permutation(len(members)).tolist()
        n_test = min(len(members) - 1, max(1, round((1 - split) * len(members))))
        test_positions.extend(members[i] for i in order[:n_test])
        train_positions.extend(members[i] for i in order[n_test:])
    return ds.select(train_positions), ds.select(test_positions)


def bootstrap_eval(ds, cfg=None, train_cfg=None, workers=1):
    """
    ``cfg.n`` seeded re-splits of ``ds`` (stratified, line level), each trained
    and evaluated; intervals for macro F1 (``ci``) and ROC-AUC (``auc_ci``).
    """
    cfg = cfg or BootstrapConfig()
    train_cfg = train_cfg or TrainConfig()
    if min(ds.n_artifact, ds.n_natural) < 2:
        raise DatasetError("too few lines to split: each class needs at least two lines")
    if not ds.is_balanced:
        logger.warning(
            "bootstrapping an unbalanced dataset (%d artifact / %d natural lines)",
            ds.n_artifact,
            ds.n_natural,
        )

    def iteration(index):
        train_set, test_set = _line_split(ds, cfg.split, np.random.SeedSequence([cfg.seed, index]))
        return evaluate_model(train(train_set, train_cfg), test_set)

    reports = _run(iteration, range(cfg.n), workers)
    f1_scores = tuple(report.f1_macro for report in reports)
    auc_scores = tuple(report.roc_auc for report in reports)
    ci = percentile_interval(f1_scores, cfg.alpha)
    auc_ci = percentile_interval(auc_scores, cfg.alpha)
    confusion = sum((report.confusion for report in reports), ConfusionMatrix())
    logger.info(
        "bootstrap over %d iterations: F1 %.3f [%.3f, %.3f], ROC-AUC %.3f [%.3f, %.3f]",
        cfg.n,
        ci.mean,
        ci.low,
        ci.high,
        auc_ci.mean,
        auc_ci.low,
        auc_ci.high,
    )
    return EvalReport(
        f1_macro=ci.mean,
        roc_auc=auc_ci.mean,
        confusion=confusion,
        n_lines=confusion.total,
        ci=ci,
        auc_ci=auc_ci,
        f1_samples=f1_scores,
        auc_samples=auc_scores,
    )


# ───────────────────────────────────
# 3. LEARNING CURVES
# ───────────────────────────────────


@dataclass(frozen=True)
class LearningCurveConfig:
    fractions: tuple = (0.1, 0.25, 0.5, 0.75, 1.0)
    runs: int = 10
    seed: int = 0

    def __post_init__(self):
        fractions = tuple(float(fraction) for fraction in self.fractions)
        if not fractions:
            raise ConfigurationError("at least one training fraction is required")
        if any(not 0 < fraction <= 1 for fraction in fractions):
            raise ConfigurationError(f"fractions must lie in (0, 1], got {fractions}")
        if list(fractions) != sorted(set(fractions)):
            raise ConfigurationError(f"fractions must be ascending and unique, got {fractions}")
        if self.runs < 1:
            raise ConfigurationError(f"runs must be positive, got {self.runs}")
        object.__setattr__(self, "fractions", fractions)


@dataclass(frozen=True)
class LearningCurvePoint:
    fraction: float
    auc_mean: float
    auc_std: float
    f1_mean: float
    f1_std: float
    auc_scores: tuple = field(default=(), repr=False)
    f1_scores: tuple = field(default=(), repr=False)

    def as_dict(self):
        return {
            "fraction": self.fraction,
            "roc_auc_mean": self.auc_mean,
            "roc_auc_std": self.auc_std,
            "f1_mean": self.f1_mean,
            "f1_std": self.f1_std,
            "runs": len(self.auc_scores),
        }


def _mean_std(values):
    values = np.asarray(values, dtype=np.float64)
    std = float(values.std(ddof=1)) if len(values) > 1 else 0.0
    return float(values.mean()), std


def learning_curve(ds_train, ds_eval, cfg=None, train_cfg=None, workers=1):
    """
    Mean and sample standard deviation of ROC-AUC and F1 on ``ds_eval`` per
    training fraction. Each run trains on its own seeded stratified subsample
    of ``ds_train``; the trainer itself uses the whole subsample.
    """
    cfg = cfg or LearningCurveConfig()
    train_cfg = replace(train_cfg or TrainConfig(), sample_fraction=1.0)
    if not len(ds_train) or not len(ds_eval):
        raise DatasetError("learning curves need non-empty training and evaluation sets")

    points = []
    for position, fraction in enumerate(cfg.fractions):

        def run(index, position=position, fraction=fraction):
            seed = np.random.SeedSequence([cfg.seed, position, index])
            subsample = stratified_sample(ds_train, fraction, seed)
            return evaluate_model(train(subsample, train_cfg), ds_eval)

        reports = _run(run, range(cfg.runs), workers)
        auc_scores = tuple(report.roc_auc for report in reports)
        f1_scores = tuple(report.f1_macro for report in reports)
        auc_mean, auc_std = _mean_std(auc_scores)
        f1_mean, f1_std = _mean_std(f1_scores)
        points.append(
            LearningCurvePoint(
                fraction=fraction,
                auc_mean=auc_mean,
                auc_std=auc_std,
                f1_mean=f1_mean,
                f1_std=f1_std,
                auc_scores=auc_scores,
                f1_scores=f1_scores,
            )
        )
        logger.info("fraction %.2f: ROC-AUC %.3f ± %.3f", fraction, auc_mean, auc_std)
    return points
