"""
Snapshot issues from a REST issue tracker into the local export format.

Fetching is plumbing only: it pages through ``{endpoint}/issues`` once per
wanted label, writes a snapshot, and every later stage works offline from
that snapshot.
"""

import logging
import time
from datetime import datetime, timezone

import requests
from django.conf import settings

from apps.core.exceptions import FetchError
from apps.core.jsonl import format_errors

from .documents import Document, DocumentKind
from .loaders import filter_by_labels, write_issue_export
from .serializers import RemoteIssueSerializer

logger = logging.getLogger(__name__)


def fetch_issues(
    endpoint,
    project,
    labels,
    auth_token=None,
    snapshot=None,
    session=None,
    retries=None,
    timeout=None,
    backoff=1.0,
):
    """Fetch every page of issues carrying any of ``labels`` and map them to Documents, first occurrence wins."""
    options = settings.ARTIFACT_SIEVE
    retries = retries if retries is not None else options["FETCH_RETRIES"]
    timeout = timeout if timeout is not None else options["FETCH_TIMEOUT"]
    per_page = options["PER_PAGE"]
    labels = set(labels)

    session = session or requests.Session()
    headers = {"Accept": "application/json"}
    if auth_token:
        headers["Authorization"] = f"token {auth_token}"
    url = f"{endpoint.rstrip('/')}/issues"

    # Trackers AND comma-separated labels together, so each label is its own series.
    documents = {}
    for label in sorted(labels) or [None]:
        for document in _page_series(session, url, label, headers, project, per_page, retries, timeout, backoff):
            documents.setdefault(document.id, document)
    documents = list(documents.values())

    if labels:
        documents = filter_by_labels(documents, labels)
    if snapshot is not None:
        write_issue_export(documents, snapshot)
        logger.info("wrote snapshot of %d issues to %s", len(documents), snapshot)
    return documents


def _page_series(session, url, label, headers, project, per_page, retries, timeout, backoff):
    page = 1
    while True:
        params = {"page": page, "per_page": per_page}
        if label is not None:
            params = {"labels": label, **params}
        response = _get(session, url, params, headers, retries, timeout, backoff)
        try:
            items = response.json()
        except ValueError as exc:
            raise FetchError(f"page {page} of {url} is not JSON") from exc
        if not isinstance(items, list):
            raise FetchError(f"page {page} of {url} is not a JSON array")
        logger.info("fetched page %d of %s for label %s (%d issues)", page, url, label or "*", len(items))
        for index, item in enumerate(items):
            document = _to_document(item, project, page, index)
            if document is not None:
                yield document
        if len(items) < per_page:
            return
        page += 1


def _get(session, url, params, headers, retries, timeout, backoff):
    last_error = None
    for attempt in range(1, retries + 1):
        try:
            response = session.get(url, params=params, headers=headers, timeout=timeout)
        except requests.RequestException as exc:
            last_error = exc
            logger.warning("GET %s failed (attempt %d/%d): %s", url, attempt, retries, exc)
            time.sleep(backoff * attempt)
            continue

        if response.status_code == 403 and "X-RateLimit-Reset" in response.headers:
            reset = _reset_time(response.headers["X-RateLimit-Reset"])
            raise FetchError(f"rate limit exceeded for {url}; resets at {reset}")
        if response.status_code >= 500:
            last_error = f"HTTP {response.status_code}"
            logger.warning("GET %s returned %s (attempt %d/%d)", url, response.status_code, attempt, retries)
            time.sleep(backoff * attempt)
            continue
        if response.status_code >= 400:
            raise FetchError(f"GET {url} returned HTTP {response.status_code}")
        return response
    raise FetchError(f"GET {url} failed after {retries} retries: {last_error}")


def _reset_time(value):
    try:
        return datetime.fromtimestamp(int(value), tz=timezone.utc).isoformat()
    except (TypeError, ValueError, OverflowError):
        return str(value)


def _to_document(item, project, page, index):
    serializer = RemoteIssueSerializer(data=item)
    if not serializer.is_valid():
        logger.warning(
            "skipping malformed issue %d on page %d: %s",
            index,
            page,
            format_errors(serializer.errors),
        )
        return None
    data = serializer.validated_data
    if "pull_request" in data:
        return None
    return Document(
        id=f"{project}#{data['number']}",
        body=data.get("body") or "",
        kind=DocumentKind.ISSUE_TICKET,
        project=project,
        labels=frozenset(data["labels"]),
    )
