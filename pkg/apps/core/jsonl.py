"""Reading and writing of the UTF-8, LF-terminated JSON-Lines files used by every stage."""

import json
import logging
from pathlib import Path

from apps.core.exceptions import CorpusError, RecordFormatError

logger = logging.getLogger(__name__)


def read_text(path):
    """Decode a file as UTF-8, replacing invalid bytes with U+FFFD."""
    path = Path(path)
    try:
        return path.read_bytes().decode("utf-8", errors="replace")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc.strerror or exc}") from exc


def iter_raw_records(path):
    """Yield ``(line_no, raw)`` for every non-empty line; ``line_no`` is 1-based."""
    for line_no, raw in enumerate(read_text(path).split("\n"), start=1):
        if raw.strip():
            yield line_no, raw


def parse_record(path, line_no, raw):
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise RecordFormatError(path, line_no, f"invalid JSON ({exc.msg})") from exc
    if not isinstance(payload, dict):
        raise RecordFormatError(path, line_no, "record is not a JSON object")
    return payload


def read_records(path):
    """Yield ``(line_no, payload)``; the first malformed line raises ``RecordFormatError``."""
    for line_no, raw in iter_raw_records(path):
        yield line_no, parse_record(path, line_no, raw)


def write_records(path, payloads):
    """Write payloads as JSON-Lines; returns the number of records written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        for payload in payloads:
            handle.write(json.dumps(payload, ensure_ascii=False))
            handle.write("\n")
            count += 1
    logger.debug("wrote %d records to %s", count, path)
    return count


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, ensure_ascii=False, indent=2)
        handle.write("\n")


def format_errors(errors):
    """Flatten ``serializer.errors`` into one readable line."""
    parts = []
    for field, messages in errors.items():
        if isinstance(messages, dict):
            messages = [f"{key}: {value}" for key, value in messages.items()]
        elif not isinstance(messages, (list, tuple)):
            messages = [messages]
        parts.append(f"{field}: {'; '.join(str(message) for message in messages)}")
    return ", ".join(parts)
