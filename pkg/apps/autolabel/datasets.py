import logging
from dataclasses import dataclass, field

import numpy as np

from apps.core.exceptions import DatasetError, RecordFormatError
from apps.core.jsonl import format_errors, read_records, write_records

from .labels import Label, Provenance
from .serializers import LabeledLineSerializer

logger = logging.getLogger(__name__)

# ───────────────────────────────────
# 1. LABELED LINES AND DATASETS
# ───────────────────────────────────


@dataclass(frozen=True)
class LabeledLine:
    text: str
    label: Label
    doc_id: str
    line_no: int
    provenance: Provenance = Provenance.MARKDOWN_SPLIT

    def __post_init__(self):
        if "\n" in self.text or "\r" in self.text:
            raise DatasetError(f"{self.doc_id}:{self.line_no}: labeled text spans lines")
        if not self.text.strip():
            raise DatasetError(f"{self.doc_id}:{self.line_no}: blank lines never enter datasets")
        object.__setattr__(self, "label", Label(self.label))
        object.__setattr__(self, "provenance", Provenance(self.provenance))

    def as_record(self):
        return {
            "text": self.text,
            "label": self.label.value,
            "doc_id": self.doc_id,
            "line_no": self.line_no,
            "provenance": self.provenance.value,
        }


@dataclass(frozen=True)
class Dataset:
    lines: tuple = ()
    counts: dict = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        counts = {label: 0 for label in Label}
        for line in self.lines:
            counts[line.label] += 1
        object.__setattr__(self, "counts", counts)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    @property
    def n_artifact(self):
        return self.counts[Label.ARTIFACT]

    @property
    def n_natural(self):
        return self.counts[Label.NATURAL_LANGUAGE]

    @property
    def texts(self):
        return [line.text for line in self.lines]

    @property
    def labels(self):
        return [line.label for line in self.lines]

    @property
    def doc_ids(self):
        return sorted({line.doc_id for line in self.lines})

    @property
    def is_balanced(self):
        return self.n_artifact == self.n_natural

    def select(self, positions):
        """Sub-dataset at the given positions, kept in original order."""
        return Dataset(self.lines[i] for i in sorted(set(positions)))

    def class_positions(self, label):
        return [i for i, line in enumerate(self.lines) if line.label == label]


# ───────────────────────────────────
# 2. SAMPLING AND SPLITTING
# ───────────────────────────────────


def _require_both_classes(ds, action):
    if not ds.n_artifact or not ds.n_natural:
        raise DatasetError(f"cannot {action} single-class dataset")


def balance(ds, seed):
    """Downsample the majority class without replacement to the minority size."""
    _require_both_classes(ds, "balance")
    artifact = ds.class_positions(Label.ARTIFACT)
    natural = ds.class_positions(Label.NATURAL_LANGUAGE)
    majority, minority = (artifact, natural) if len(artifact) >= len(natural) else (natural, artifact)
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(majority), size=len(minority), replace=False)
    balanced = ds.select([majority[i] for i in chosen.tolist()] + minority)
    logger.info(
        "balanced %d artifact / %d natural lines to %d per class",
        len(artifact),
        len(natural),
        len(minority),
    )
    return balanced


def stratified_sample(ds, fraction, seed):
    """
    Keep ``round(fraction * n)`` lines of each class (at least one).

    ``fraction=1.0`` returns the dataset unchanged.
    """
    if not 0 < fraction <= 1:
        raise DatasetError(f"sample fraction must be in (0, 1], got {fraction}")
    if fraction == 1:
        return ds
    rng = np.random.default_rng(seed)
    positions = []
    for label in (Label.ARTIFACT, Label.NATURAL_LANGUAGE):
        members = ds.class_positions(label)
        if not members:
            continue
        size = min(len(members), max(1, round(fraction * len(members))))
        chosen = rng.choice(len(members), size=size, replace=False)
        positions.extend(members[i] for i in chosen.tolist())
    return ds.select(positions)


def split_train_test(ds, has_linked_commits):
    """Document-level split: lines of documents satisfying the predicate form the test set."""
    train, test = [], []
    for line in ds.lines:
        (test if has_linked_commits(line.doc_id) else train).append(line)
    return Dataset(train), Dataset(test)


def split_by_documents(ds, test_fraction, seed):
    """Seeded random document-level split; ``test_fraction`` of the documents go to test."""
    if not 0 < test_fraction < 1:
        raise DatasetError(f"test fraction must be in (0, 1), got {test_fraction}")
    doc_ids = ds.doc_ids
    if len(doc_ids) < 2:
        raise DatasetError("a document-level split needs at least two documents")
    order = np.random.default_rng(seed).permutation(len(doc_ids))
    n_test = min(len(doc_ids) - 1, max(1, round(test_fraction * len(doc_ids))))
    test_ids = frozenset(doc_ids[i] for i in order[:n_test].tolist())
    return split_train_test(ds, test_ids.__contains__)


# ───────────────────────────────────
# 3. DATASET FILES
# ───────────────────────────────────


def read_dataset(path):
    lines = []
    for line_no, payload in read_records(path):
        serializer = LabeledLineSerializer(data=payload)
        if not serializer.is_valid():
            raise RecordFormatError(path, line_no, format_errors(serializer.errors))
        lines.append(LabeledLine(**serializer.validated_data))
    logger.info("read %d labeled lines from %s", len(lines), path)
    return Dataset(lines)


def write_dataset(ds, path):
    return write_records(path, (line.as_record() for line in ds.lines))
