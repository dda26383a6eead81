"""The trained linear model and everything that applies it to text."""

from dataclasses import dataclass, field

import numpy as np

from apps.autolabel.labels import Label
from apps.features.vectorizer import vectorize_many
from apps.preprocess.tokenizer import tokenize_line

FORMAT_VERSION = 1


@dataclass(frozen=True)
class LinearModel:
    """
    ``score = <weights, x> + bias``; a positive score means Artifact, zero or
    below means natural language.
    """

    weights: np.ndarray
    bias: float
    vocabulary: object
    config: object
    format_version: int = FORMAT_VERSION
    stats: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.weights) != len(self.vocabulary):
            raise ValueError(
                f"{len(self.weights)} weights for a vocabulary of {len(self.vocabulary)}"
            )


@dataclass(frozen=True)
class Prediction:
    label: Label
    score: float
    blank: bool = False


def label_for(score):
    return Label.ARTIFACT if score > 0 else Label.NATURAL_LANGUAGE


def decision_scores(model, lines):
    """Scores for many lines at once, as a float64 array in input order."""
    if not lines:
        return np.zeros(0)
    matrix = vectorize_many([tokenize_line(line) for line in lines], model.vocabulary)
    return matrix @ model.weights + model.bias


def decision_score(model, line):
    return float(decision_scores(model, [line])[0])


def predict(model, lines):
    """
    Label every line. Blank lines are not scored: they come back as natural
    language with score 0 and ``blank=True`` so metrics can skip them.
    """
    lines = list(lines)
    scored = [i for i, line in enumerate(lines) if line.strip()]
    scores = decision_scores(model, [lines[i] for i in scored]).tolist()
    predictions = [Prediction(Label.NATURAL_LANGUAGE, 0.0, blank=True)] * len(lines)
    for i, score in zip(scored, scores):
        predictions[i] = Prediction(label_for(score), score)
    return predictions


def filter_lines(model, lines, keep):
    """
    Keep the lines predicted as ``keep``.

    A blank line survives only next to a kept line, so paragraphs of the
    surviving text keep their shape.
    """
    lines = list(lines)
    keep = Label(keep)
    predictions = predict(model, lines)
    kept = [not p.blank and p.label == keep for p in predictions]
    result = []
    for i, (line, prediction) in enumerate(zip(lines, predictions)):
        if kept[i]:
            result.append(line)
        elif prediction.blank and ((i > 0 and kept[i - 1]) or (i + 1 < len(lines) and kept[i + 1])):
            result.append(line)
    return result
