import logging
import re
from pathlib import Path

from apps.core.exceptions import CorpusError, RecordFormatError
from apps.core.jsonl import (
    format_errors,
    iter_raw_records,
    parse_record,
    read_text,
    write_records,
)

from .documents import Document, DocumentKind, RawLine
from .serializers import IssueRecordSerializer

logger = logging.getLogger(__name__)

LINE_BREAK = re.compile(r"\r\n|\r|\n")


def _sorted_files(root, pattern):
    return sorted(
        (path for path in root.rglob(pattern) if path.is_file()),
        key=lambda path: path.relative_to(root).as_posix(),
    )


def load_documents(path, kind, project=None):
    """
    Load every document under ``path``.

    Issue exports are ``.jsonl`` files (a single file or a directory tree);
    documentation is every ``*.md`` file below ``path``. Files are read in
    lexicographic order so the result only depends on directory contents.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"cannot read {path}: no such file or directory")
    kind = DocumentKind(kind)
    if kind == DocumentKind.ISSUE_TICKET:
        files = [path] if path.is_file() else _sorted_files(path, "*.jsonl")
        documents = _load_issue_files(files)
    else:
        documents = _load_markdown_files(path, project)

    unique = deduplicate(documents)
    logger.info("loaded %d %s documents from %s", len(unique), kind.value, path)
    return unique


def deduplicate(documents):
    """Drop documents whose id was already seen, keeping the first occurrence."""
    unique, seen = [], set()
    for document in documents:
        if document.id in seen:
            logger.warning("skipping duplicate document id %s", document.id)
            continue
        seen.add(document.id)
        unique.append(document)
    return unique


def _load_issue_files(files):
    for file in files:
        for index, raw in iter_raw_records(file):
            try:
                payload = parse_record(file, index, raw)
            except RecordFormatError as exc:
                logger.warning("skipping malformed issue record %d in %s: %s", index, file, exc.detail)
                continue
            serializer = IssueRecordSerializer(data=payload)
            if not serializer.is_valid():
                logger.warning(
                    "skipping malformed issue record %d in %s: %s",
                    index,
                    file,
                    format_errors(serializer.errors),
                )
                continue
            data = serializer.validated_data
            yield Document(
                id=data["id"],
                body=data["body"],
                kind=DocumentKind.ISSUE_TICKET,
                project=data["project"],
                labels=frozenset(data["labels"]),
                linked_commits=tuple(data["linked_commits"]),
            )


def _load_markdown_files(path, project):
    if path.is_file():
        files, root = [path], path.parent
    else:
        files, root = _sorted_files(path, "*.md"), path
    project = project if project is not None else root.name
    for file in files:
        yield Document(
            id=f"{project}/{file.relative_to(root).as_posix()}",
            body=read_text(file),
            kind=DocumentKind.DOCUMENTATION_FILE,
            project=project,
        )


def filter_by_labels(docs, wanted):
    """Keep issues whose labels intersect ``wanted``; documentation always passes."""
    wanted = set(wanted)
    return [doc for doc in docs if not doc.is_issue or doc.labels & wanted]


def split_lines(doc):
    """
    Split a body on LF, CRLF and CR.

    A trailing terminator does not produce an extra empty line; an empty body
    is one empty line.
    """
    texts = LINE_BREAK.split(doc.body)
    if len(texts) > 1 and texts[-1] == "":
        texts.pop()
    return [RawLine(doc_id=doc.id, line_no=line_no, text=text) for line_no, text in enumerate(texts)]


def has_linked_commits(docs):
    """Predicate over doc ids: true for issues that have commits linked to them."""
    linked = frozenset(doc.id for doc in docs if doc.linked_commits)
    return linked.__contains__


def issue_record(doc):
    record = {
        "id": doc.id,
        "project": doc.project,
        "labels": sorted(doc.labels),
        "body": doc.body,
    }
    if doc.linked_commits:
        record["linked_commits"] = list(doc.linked_commits)
    return record


def write_issue_export(docs, path):
    """Write issue documents in the local export format; returns the record count."""
    return write_records(path, (issue_record(doc) for doc in docs if doc.is_issue))


def read_lines(path):
    """Lines of a plain text file, split like document bodies; an empty file has none."""
    text = read_text(path)
    if not text:
        return []
    return [line.text for line in split_lines(Document(id=str(path), body=text, kind=DocumentKind.DOCUMENTATION_FILE))]
