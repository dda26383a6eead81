"""
Classification metrics with Artifact as the positive class.

Label sequences may hold ``Label`` members or their values (``"nl"``,
``"artifact"``).
"""

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from apps.autolabel.labels import Label
from apps.core.exceptions import MetricError


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self):
        return self.tp + self.fp + self.fn + self.tn

    def __add__(self, other):
        return ConfusionMatrix(
            tp=self.tp + other.tp,
            fp=self.fp + other.fp,
            fn=self.fn + other.fn,
            tn=self.tn + other.tn,
        )

    def as_dict(self):
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn}


def _labels(values):
    try:
        return [Label(value) for value in values]
    except ValueError as exc:
        raise MetricError(str(exc)) from exc


def _paired(a, b):
    a, b = _labels(a), _labels(b)
    if len(a) != len(b):
        raise MetricError(f"label sequences differ in length ({len(a)} vs {len(b)})")
    if not a:
        raise MetricError("label sequences are empty")
    return a, b


def confusion_matrix(truth, pred):
    truth, pred = _paired(truth, pred)
    tp = fp = fn = tn = 0
    for actual, predicted in zip(truth, pred):
        if predicted == Label.ARTIFACT:
            if actual == Label.ARTIFACT:
                tp += 1
            else:
                fp += 1
        elif actual == Label.ARTIFACT:
            fn += 1
        else:
            tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def _f1(hits, false_alarms, misses):
    # A class never predicted and never present scores 0.
    denominator = 2 * hits + false_alarms + misses
    return 2 * hits / denominator if denominator else 0.0


def f1_from_confusion(cm):
    artifact = _f1(cm.tp, cm.fp, cm.fn)
    natural = _f1(cm.tn, cm.fn, cm.fp)
    return (artifact + natural) / 2


def f1_macro(truth, pred):
    """Unweighted mean of the per-class F1 scores."""
    return f1_from_confusion(confusion_matrix(truth, pred))


def roc_auc(scores, truth):
    """Mann-Whitney AUC with average ranks: ties between classes count one half."""
    truth = _labels(truth)
    scores = np.asarray(scores, dtype=np.float64)
    if len(scores) != len(truth):
        raise MetricError(f"{len(scores)} scores for {len(truth)} labels")
    positive = np.array([label == Label.ARTIFACT for label in truth], dtype=bool)
    n_pos = int(positive.sum())
    n_neg = len(truth) - n_pos
    if not n_pos or not n_neg:
        raise MetricError("AUC undefined: truth contains a single class")
    ranks = rankdata(scores, method="average")
    u_statistic = ranks[positive].sum() - n_pos * (n_pos + 1) / 2
    return float(u_statistic / (n_pos * n_neg))


def cohen_kappa(a, b):
    """
    Chance-corrected agreement of two raters.

    When chance agreement is certain (both raters used one and the same label
    throughout) kappa is 1.0 for identical sequences and 0.0 otherwise.
    """
    a, b = _paired(a, b)
    n = len(a)
    observed = sum(x == y for x, y in zip(a, b)) / n
    expected = sum(a.count(label) * b.count(label) for label in Label) / (n * n)
    if expected == 1:
        return 1.0 if a == b else 0.0
    return (observed - expected) / (1 - expected)
