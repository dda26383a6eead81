"""
Rule-based baselines built on the autolabel expression table.

The per-line baseline sees each line in isolation; the document baseline
first marks fenced blocks across the whole document and only falls back to
the per-line rules outside of them.
"""

import logging
from collections import defaultdict

from django.db import models

from apps.autolabel.labels import Label
from apps.autolabel.rules import fence_mask, match_line_artifact_rule
from apps.corpus.documents import Document, DocumentKind
from apps.corpus.loaders import split_lines
from apps.evaluation.metrics import confusion_matrix, f1_from_confusion, roc_auc
from apps.evaluation.protocol import EvalReport

logger = logging.getLogger(__name__)


class BaselineMode(models.TextChoices):
    LINE = "line", "Per line"
    DOCUMENT = "document", "Per document"


def classify_line_regex(line):
    """Artifact when any line-level rule matches; discard rules count as natural language."""
    if match_line_artifact_rule(line) is None:
        return Label.NATURAL_LANGUAGE
    return Label.ARTIFACT


def classify_document_regex(doc):
    """``(RawLine, Label)`` for every non-blank line of ``doc``."""
    lines = split_lines(doc)
    fenced = fence_mask([line.text for line in lines])
    return [
        (line, Label.ARTIFACT if in_fence else classify_line_regex(line.text))
        for line, in_fence in zip(lines, fenced)
        if line.text.strip()
    ]


def _rebuild_documents(ds):
    """One document per doc_id, lines in ``line_no`` order, gaps left blank."""
    grouped = defaultdict(dict)
    for line in ds.lines:
        grouped[line.doc_id][line.line_no] = line.text
    documents = []
    for doc_id, by_number in grouped.items():
        body = [""] * (max(by_number) + 1)
        for line_no, text in by_number.items():
            body[line_no] = text
        documents.append(Document(id=doc_id, body="\n".join(body), kind=DocumentKind.DOCUMENTATION_FILE))
    return documents


def _document_predictions(ds, documents):
    predicted = {}
    for doc in documents:
        for line, label in classify_document_regex(doc):
            predicted[(doc.id, line.line_no)] = label
    return predicted


def evaluate_baseline(ds, mode, documents=None):
    """
    Score a baseline against the labels of ``ds``.

    In document mode the original ``documents`` give the fence context; without
    them the documents are rebuilt from the dataset lines, which is exact for
    datasets that were not balanced. Baseline scores are the 0/1 labels.
    """
    mode = BaselineMode(mode)
    if mode == BaselineMode.LINE:
        predictions = [classify_line_regex(text) for text in ds.texts]
    else:
        predicted = _document_predictions(ds, documents if documents is not None else _rebuild_documents(ds))
        predictions = [predicted.get((line.doc_id, line.line_no), classify_line_regex(line.text)) for line in ds.lines]

    confusion = confusion_matrix(ds.labels, predictions)
    scores = [1.0 if label == Label.ARTIFACT else 0.0 for label in predictions]
    report = EvalReport(
        f1_macro=f1_from_confusion(confusion),
        roc_auc=roc_auc(scores, ds.labels),
        confusion=confusion,
        n_lines=len(ds),
    )
    logger.info("%s baseline: F1 %.3f, ROC-AUC %.3f", mode.label.lower(), report.f1_macro, report.roc_auc)
    return report
