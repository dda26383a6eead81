"""Automatic separation of Markdown-annotated documents into labeled lines."""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace

from apps.corpus.loaders import split_lines

from .datasets import Dataset, LabeledLine
from .labels import Label, Provenance
from .rules import RULESET_VERSION, Action, fence_mask, has_fenced_block, match_markdown_rule, match_noise_rule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitReport:
    n_artifact: int = 0
    n_natural: int = 0
    n_discarded: int = 0
    n_blank: int = 0

    @property
    def total(self):
        return self.n_artifact + self.n_natural + self.n_discarded + self.n_blank

    def __add__(self, other):
        return SplitReport(
            n_artifact=self.n_artifact + other.n_artifact,
            n_natural=self.n_natural + other.n_natural,
            n_discarded=self.n_discarded + other.n_discarded,
            n_blank=self.n_blank + other.n_blank,
        )

    def as_dict(self):
        return {
            "n_artifact": self.n_artifact,
            "n_natural": self.n_natural,
            "n_discarded": self.n_discarded,
            "n_blank": self.n_blank,
        }


@dataclass
class GenerationReport:
    """Running totals of one dataset build, written next to the dataset."""

    documents: int = 0
    contributing_documents: int = 0
    split: SplitReport = field(default_factory=SplitReport)
    reclassified: int = 0
    filtered_out: int = 0
    rule_hits: Counter = field(default_factory=Counter)

    def as_dict(self):
        return {
            "ruleset_version": RULESET_VERSION,
            "documents": self.documents,
            "contributing_documents": self.contributing_documents,
            "split": self.split.as_dict(),
            "noise_filters": {
                "reclassified": self.reclassified,
                "discarded": self.filtered_out,
                "rule_hits": dict(sorted(self.rule_hits.items())),
            },
        }


def split_markdown(doc):
    """
    Split ``doc`` by its Markdown formatting.

    Returns ``(artifact, natural, report)``. Fenced blocks (delimiters included),
    indented code, standalone links/images/URLs and tables are artifacts;
    block quotes are discarded; every other non-blank line is a natural
    language candidate.
    """
    lines = split_lines(doc)
    fenced = fence_mask([line.text for line in lines])
    artifact, natural = [], []
    n_discarded = n_blank = 0

    for line, in_fence in zip(lines, fenced):
        if not line.text.strip():
            n_blank += 1
            continue
        if in_fence:
            label = Label.ARTIFACT
        else:
            rule = match_markdown_rule(line.text)
            if rule is None:
                label = Label.NATURAL_LANGUAGE
            elif rule.action == Action.DISCARD:
                n_discarded += 1
                continue
            else:
                label = Label.ARTIFACT
        labeled = LabeledLine(
            text=line.text,
            label=label,
            doc_id=line.doc_id,
            line_no=line.line_no,
            provenance=Provenance.MARKDOWN_SPLIT,
        )
        (artifact if label == Label.ARTIFACT else natural).append(labeled)

    report = SplitReport(
        n_artifact=len(artifact),
        n_natural=len(natural),
        n_discarded=n_discarded,
        n_blank=n_blank,
    )
    return artifact, natural, report


def apply_noise_filters(lines, rule_hits=None):
    """
    Run natural-language candidates through the noise-filter banks.

    Returns ``(natural, reclassified, discarded)``; the first matching rule
    decides. ``rule_hits`` (a Counter) receives one count per matching rule.
    """
    natural, reclassified, discarded = [], [], []
    for line in lines:
        rule = match_noise_rule(line.text)
        if rule is None:
            natural.append(line)
            continue
        if rule_hits is not None:
            rule_hits[f"{rule.bank}:{rule.name}"] += 1
        if rule.action == Action.DISCARD:
            discarded.append(line)
        else:
            reclassified.append(replace(line, label=Label.ARTIFACT, provenance=Provenance.NOISE_FILTER))
    return natural, reclassified, discarded


def contributes(doc):
    """Issues count only when the reporter demonstrably uses fenced code blocks."""
    if not doc.is_issue:
        return True
    return has_fenced_block(line.text for line in split_lines(doc))


def build_dataset(docs, report=None):
    """Label every contributing document and collect the lines in document order."""
    report = report if report is not None else GenerationReport()
    lines = []
    for doc in docs:
        report.documents += 1
        if not contributes(doc):
            continue
        report.contributing_documents += 1
        artifact, candidates, split = split_markdown(doc)
        natural, reclassified, discarded = apply_noise_filters(candidates, report.rule_hits)
        report.split = report.split + split
        report.reclassified += len(reclassified)
        report.filtered_out += len(discarded)
        lines.extend(sorted(artifact + reclassified + natural, key=lambda line: line.line_no))

    dataset = Dataset(lines)
    logger.info(
        "built dataset from %d of %d documents: %d artifact / %d natural lines",
        report.contributing_documents,
        report.documents,
        dataset.n_artifact,
        dataset.n_natural,
    )
    return dataset
