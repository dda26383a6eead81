from dataclasses import dataclass, field

from django.db import models

from apps.core.exceptions import CorpusError

# ───────────────────────────────────
# 1. DOCUMENT KINDS
# ───────────────────────────────────


class DocumentKind(models.TextChoices):
    ISSUE_TICKET = "issue", "Issue ticket"
    DOCUMENTATION_FILE = "doc", "Documentation file"


# ───────────────────────────────────
# 2. DOCUMENTS AND LINES
# ───────────────────────────────────


@dataclass(frozen=True)
class Document:
    """One issue description or Markdown documentation file."""

    id: str
    body: str
    kind: DocumentKind
    project: str = ""
    labels: frozenset = field(default_factory=frozenset)
    linked_commits: tuple = ()

    def __post_init__(self):
        if not self.id:
            raise CorpusError("document id must not be empty")
        object.__setattr__(self, "kind", DocumentKind(self.kind))
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "linked_commits", tuple(self.linked_commits))
        if self.kind == DocumentKind.DOCUMENTATION_FILE and self.labels:
            raise CorpusError(f"documentation file {self.id} cannot carry labels")

    @property
    def is_issue(self):
        return self.kind == DocumentKind.ISSUE_TICKET

    def __str__(self):
        return f"{self.kind.label} {self.id}"


@dataclass(frozen=True)
class RawLine:
    doc_id: str
    line_no: int
    text: str
