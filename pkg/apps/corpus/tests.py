import json
import random
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

import requests
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from apps.autolabel.datasets import read_dataset
from apps.core.exceptions import CorpusError, FetchError
from apps.corpus.documents import Document, DocumentKind
from apps.corpus.fetcher import fetch_issues
from apps.corpus.fixtures import generate_fixture_corpus
from apps.corpus.loaders import (
    deduplicate,
    filter_by_labels,
    has_linked_commits,
    load_documents,
    read_lines,
    split_lines,
    write_issue_export,
)

BUG_LABELS = {"bug", "defect", "regression"}


class TemporaryDirectoryMixin:
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)


class DocumentTests(SimpleTestCase):
    def test_id_must_not_be_empty(self):
        with self.assertRaises(CorpusError):
            Document(id="", body="x", kind=DocumentKind.ISSUE_TICKET)

    def test_documentation_files_carry_no_labels(self):
        with self.assertRaises(CorpusError):
            Document(id="a.md", body="x", kind=DocumentKind.DOCUMENTATION_FILE, labels={"bug"})


class LoadDocumentsTests(TemporaryDirectoryMixin, SimpleTestCase):
    def write_export(self, name, *lines):
        path = self.root / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    def test_markdown_directory(self):
        (self.root / "b.md").write_text("second", encoding="utf-8")
        (self.root / "a.md").write_text("first", encoding="utf-8")
        (self.root / "notes.txt").write_text("ignored", encoding="utf-8")
        docs = load_documents(self.root, DocumentKind.DOCUMENTATION_FILE)
        self.assertEqual([doc.id for doc in docs], [f"{self.root.name}/a.md", f"{self.root.name}/b.md"])
        self.assertTrue(all(doc.kind == DocumentKind.DOCUMENTATION_FILE for doc in docs))
        self.assertEqual(docs[0].project, self.root.name)

    def test_same_file_name_in_two_projects(self):
        for project in ("alpha", "beta"):
            (self.root / project).mkdir()
            (self.root / project / "README.md").write_text(f"{project} readme", encoding="utf-8")
        docs = deduplicate(
            [
                *load_documents(self.root / "alpha", DocumentKind.DOCUMENTATION_FILE),
                *load_documents(self.root / "beta", DocumentKind.DOCUMENTATION_FILE),
            ]
        )
        self.assertEqual([doc.id for doc in docs], ["alpha/README.md", "beta/README.md"])
        self.assertEqual([doc.body for doc in docs], ["alpha readme", "beta readme"])

    def test_project_override_prefixes_the_id(self):
        (self.root / "guide.md").write_text("x", encoding="utf-8")
        [doc] = load_documents(self.root / "guide.md", DocumentKind.DOCUMENTATION_FILE, project="acme")
        self.assertEqual((doc.id, doc.project), ("acme/guide.md", "acme"))

    def test_invalid_utf8_is_replaced(self):
        (self.root / "broken.md").write_bytes(b"ok \xff end")
        [doc] = load_documents(self.root, DocumentKind.DOCUMENTATION_FILE)
        self.assertEqual(doc.body, "ok � end")

    def test_issue_labels_and_commits(self):
        path = self.write_export(
            "issues.jsonl",
            json.dumps({"id": "acme#1", "project": "acme", "labels": ["bug", "ui"], "body": "  keep\r\n"}),
            json.dumps({"id": "acme#2", "labels": [], "body": "x", "linked_commits": ["abc123"]}),
        )
        first, second = load_documents(path, DocumentKind.ISSUE_TICKET)
        self.assertEqual(first.labels, frozenset({"bug", "ui"}))
        self.assertEqual(first.body, "  keep\r\n")
        self.assertEqual(second.linked_commits, ("abc123",))

    def test_malformed_records_are_skipped_with_warning(self):
        path = self.write_export(
            "issues.jsonl",
            json.dumps({"id": "acme#1", "body": "x"}),
            "{not json",
            json.dumps({"id": "acme#3"}),
        )
        with self.assertLogs("apps.corpus.loaders", "WARNING") as logs:
            docs = load_documents(path, DocumentKind.ISSUE_TICKET)
        self.assertEqual([doc.id for doc in docs], ["acme#1"])
        self.assertIn("record 2", logs.output[0])
        self.assertIn("record 3", logs.output[1])

    def test_duplicate_ids_are_skipped(self):
        record = json.dumps({"id": "acme#1", "body": "x"})
        path = self.write_export("issues.jsonl", record, record)
        with self.assertLogs("apps.corpus.loaders", "WARNING"):
            self.assertEqual(len(load_documents(path, DocumentKind.ISSUE_TICKET)), 1)

    def test_missing_path(self):
        with self.assertRaises(CorpusError) as raised:
            load_documents(self.root / "missing", DocumentKind.ISSUE_TICKET)
        self.assertIn("missing", str(raised.exception))

    def test_export_round_trip(self):
        docs = [
            Document(id="acme#1", body="a\nb", kind=DocumentKind.ISSUE_TICKET, project="acme", labels={"bug"}),
            Document(id="acme#2", body="c", kind=DocumentKind.ISSUE_TICKET, linked_commits=("f00",)),
            Document(id="readme.md", body="d", kind=DocumentKind.DOCUMENTATION_FILE),
        ]
        self.assertEqual(write_issue_export(docs, self.root / "out" / "export.jsonl"), 2)
        self.assertEqual(load_documents(self.root / "out", DocumentKind.ISSUE_TICKET), docs[:2])

    def test_read_lines(self):
        (self.root / "empty.txt").write_text("", encoding="utf-8")
        (self.root / "two.txt").write_text("a\r\n\nb\n", encoding="utf-8")
        self.assertEqual(read_lines(self.root / "empty.txt"), [])
        self.assertEqual(read_lines(self.root / "two.txt"), ["a", "", "b"])


class FilterAndSplitTests(SimpleTestCase):
    def setUp(self):
        self.feature = Document(id="a#1", body="", kind=DocumentKind.ISSUE_TICKET, labels={"enhancement"})
        self.bug = Document(id="a#2", body="", kind=DocumentKind.ISSUE_TICKET, labels={"bug"})
        self.readme = Document(id="readme.md", body="", kind=DocumentKind.DOCUMENTATION_FILE)

    def test_filter_by_labels(self):
        docs = [self.feature, self.bug, self.readme]
        self.assertEqual(filter_by_labels(docs, BUG_LABELS), [self.bug, self.readme])
        self.assertEqual(filter_by_labels(docs, set()), [self.readme])

    def split(self, body):
        return [line.text for line in split_lines(Document(id="d", body=body, kind=DocumentKind.ISSUE_TICKET))]

    def test_split_lines(self):
        self.assertEqual(self.split("a\r\nb\nc"), ["a", "b", "c"])
        self.assertEqual(self.split("a\rb"), ["a", "b"])
        self.assertEqual(self.split(""), [""])
        self.assertEqual(self.split("x\n"), ["x"])
        self.assertEqual(self.split("x\n\n"), ["x", ""])

    def test_split_lines_round_trip_on_random_bodies(self):
        rng = random.Random(0)
        alphabet = "ab \t;{}\n\n"
        for _ in range(1000):
            body = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
            texts = self.split(body)
            self.assertEqual("\n".join(texts), body[:-1] if body.endswith("\n") else body)
            self.assertEqual(self.split(body.replace("\n", "\r\n")), texts)

    def test_line_numbers(self):
        lines = split_lines(Document(id="d", body="a\n\nb", kind=DocumentKind.ISSUE_TICKET))
        self.assertEqual([line.line_no for line in lines], [0, 1, 2])
        self.assertTrue(all(line.doc_id == "d" for line in lines))

    def test_linked_commit_predicate(self):
        linked = Document(id="a#3", body="", kind=DocumentKind.ISSUE_TICKET, linked_commits=("c0ffee",))
        predicate = has_linked_commits([self.bug, linked])
        self.assertTrue(predicate("a#3"))
        self.assertFalse(predicate("a#2"))


def response(status_code=200, payload=None, headers=None):
    result = mock.Mock(status_code=status_code, headers=headers or {})
    result.json.return_value = payload
    return result


FETCH_SETTINGS = {**settings.ARTIFACT_SIEVE, "PER_PAGE": 2}


@override_settings(ARTIFACT_SIEVE=FETCH_SETTINGS)
class FetchIssuesTests(TemporaryDirectoryMixin, SimpleTestCase):
    def session(self, *responses):
        session = mock.Mock()
        session.get.side_effect = list(responses)
        return session

    def test_pages_labels_and_snapshot(self):
        session = self.session(
            response(
                payload=[
                    {"number": 1, "body": "Crash\n```\nx\n```", "labels": [{"name": "bug"}]},
                    {"number": 2, "body": "PR", "labels": ["bug"], "pull_request": {"url": "x"}},
                ]
            ),
            response(payload=[{"number": 3, "body": None, "labels": [{"name": "question"}]}]),
        )
        snapshot = self.root / "snapshot.jsonl"
        docs = fetch_issues(
            "https://api.example.org/repos/acme/app/",
            "acme",
            {"bug"},
            auth_token="secret",
            snapshot=snapshot,
            session=session,
        )
        self.assertEqual([doc.id for doc in docs], ["acme#1"])
        self.assertEqual(docs[0].labels, frozenset({"bug"}))
        first_call = session.get.call_args_list[0]
        self.assertEqual(first_call.args[0], "https://api.example.org/repos/acme/app/issues")
        self.assertEqual(first_call.kwargs["params"], {"labels": "bug", "page": 1, "per_page": 2})
        self.assertEqual(first_call.kwargs["headers"]["Authorization"], "token secret")
        self.assertEqual(session.get.call_count, 2)
        self.assertEqual(load_documents(snapshot, DocumentKind.ISSUE_TICKET), docs)

    def test_each_label_is_fetched_separately_and_merged(self):
        def issue(number, label):
            return {"number": number, "body": "x", "labels": [label]}

        session = self.session(
            response(payload=[issue(1, "bug"), issue(2, "bug")]),
            response(payload=[]),
            response(payload=[issue(2, "regression"), issue(5, "regression")]),
            response(payload=[issue(9, "regression")]),
        )
        docs = fetch_issues("https://x", "acme", {"regression", "bug"}, session=session, backoff=0)
        self.assertEqual([doc.id for doc in docs], ["acme#1", "acme#2", "acme#5", "acme#9"])
        self.assertEqual(docs[1].labels, frozenset({"bug"}))
        calls = [call.kwargs["params"] for call in session.get.call_args_list]
        self.assertEqual([params["labels"] for params in calls], ["bug", "bug", "regression", "regression"])
        self.assertEqual([params["page"] for params in calls], [1, 2, 1, 2])

    def test_no_labels_fetches_one_unfiltered_series(self):
        session = self.session(response(payload=[{"number": 4, "body": "x", "labels": []}]))
        docs = fetch_issues("https://x", "acme", set(), session=session, backoff=0)
        self.assertEqual([doc.id for doc in docs], ["acme#4"])
        self.assertNotIn("labels", session.get.call_args.kwargs["params"])

    def test_retries_server_errors(self):
        session = self.session(response(502), response(payload=[]))
        with self.assertLogs("apps.corpus.fetcher", "WARNING"):
            docs = fetch_issues("https://x", "acme", set(), session=session, retries=3, backoff=0)
        self.assertEqual(docs, [])
        self.assertEqual(session.get.call_count, 2)

    def test_retries_connection_errors_then_gives_up(self):
        session = self.session(*[requests.ConnectionError("refused")] * 2)
        with self.assertLogs("apps.corpus.fetcher", "WARNING"):
            with self.assertRaises(FetchError) as raised:
                fetch_issues("https://x", "acme", set(), session=session, retries=2, backoff=0)
        self.assertIn("failed after 2 retries", str(raised.exception))

    def test_rate_limit_is_fatal(self):
        session = self.session(response(403, headers={"X-RateLimit-Reset": "0"}))
        with self.assertRaises(FetchError) as raised:
            fetch_issues("https://x", "acme", set(), session=session, backoff=0)
        self.assertIn("1970-01-01T00:00:00+00:00", str(raised.exception))

    def test_client_errors_are_fatal(self):
        session = self.session(response(404))
        with self.assertRaises(FetchError):
            fetch_issues("https://x", "acme", set(), session=session, backoff=0)
        self.assertEqual(session.get.call_count, 1)

    def test_command(self):
        snapshot = self.root / "snapshot.jsonl"
        page = response(payload=[{"number": 7, "body": "x", "labels": ["defect"]}])
        with mock.patch.object(requests.Session, "get", return_value=page):
            out = StringIO()
            call_command("fetch_issues", endpoint="https://x", project="acme", snapshot=str(snapshot), stdout=out)
        self.assertEqual(json.loads(out.getvalue())["issues"], 1)
        self.assertTrue(snapshot.exists())

    def test_command_reports_fetch_errors(self):
        with mock.patch.object(requests.Session, "get", return_value=response(404)):
            with self.assertRaises(CommandError) as raised:
                call_command("fetch_issues", endpoint="https://x", project="acme", snapshot=str(self.root / "s.jsonl"))
        self.assertEqual(raised.exception.returncode, 2)


class FixtureCorpusTests(TemporaryDirectoryMixin, SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.corpus = generate_fixture_corpus(seed=0)

    def test_size(self):
        self.assertGreaterEqual(len(self.corpus.issues), 60)
        self.assertGreaterEqual(len(self.corpus.truth), 2000)
        self.assertTrue(self.corpus.truth.n_artifact and self.corpus.truth.n_natural)

    def test_deterministic(self):
        again = generate_fixture_corpus(seed=0)
        self.assertEqual(again.documents, self.corpus.documents)
        self.assertNotEqual(generate_fixture_corpus(seed=1).documents, self.corpus.documents)

    def test_truth_covers_every_non_blank_line(self):
        truth = {(line.doc_id, line.line_no) for line in self.corpus.truth}
        for doc in self.corpus.documents:
            for raw in split_lines(doc):
                self.assertEqual((doc.id, raw.line_no) in truth, bool(raw.text.strip()))

    def test_mixes_labels_and_linked_commits(self):
        issues = self.corpus.issues
        self.assertLess(len(filter_by_labels(issues, BUG_LABELS)), len(issues))
        self.assertTrue(any(doc.linked_commits for doc in issues))

    def test_command_writes_loadable_corpus(self):
        out = StringIO()
        call_command("build_fixture_corpus", out=str(self.root), issues=12, docs=3, stdout=out)
        summary = json.loads(out.getvalue())
        self.assertEqual(len(load_documents(self.root / "issues", DocumentKind.ISSUE_TICKET)), 12)
        docs = load_documents(self.root / "docs", DocumentKind.DOCUMENTATION_FILE)
        self.assertEqual(len(docs), 3)
        self.assertEqual(len(read_dataset(self.root / "truth.jsonl")), summary["labeled_lines"])
        truth_ids = {line.doc_id for line in read_dataset(self.root / "truth.jsonl")}
        self.assertTrue({doc.id for doc in docs} <= truth_ids)

