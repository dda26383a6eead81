import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.test import SimpleTestCase

from apps.autolabel.labeling import build_dataset
from apps.autolabel.labels import Label
from apps.baseline.regex import BaselineMode, classify_document_regex, classify_line_regex, evaluate_baseline
from apps.corpus.documents import Document, DocumentKind
from apps.corpus.fixtures import generate_fixture_corpus

A = Label.ARTIFACT
N = Label.NATURAL_LANGUAGE

FENCED_QUERY = "\n".join(
    [
        "The export fails on large files.",
        "```sql",
        "SELECT name FROM users",
        "```",
        "It started after the upgrade.",
    ]
)


def document(body, doc_id="guide.md"):
    return Document(id=doc_id, body=body, kind=DocumentKind.DOCUMENTATION_FILE)


def document_labels(doc):
    return [(line.text, label) for line, label in classify_document_regex(doc)]


class LineBaselineTests(SimpleTestCase):
    def test_examples(self):
        examples = {
            "at org.foo.Bar.baz(Bar.java:42)": A,
            "$ mvn install": A,
            "{": A,
            '"timeout": 30,': A,
            "2024-01-15 10:23:45 ERROR boom": A,
            "    indented code": A,
            "| a | b |": A,
            "The build fails.": N,
            "> quoted text": N,
            "OS: Ubuntu": N,
            "": N,
        }
        for text, expected in examples.items():
            with self.subTest(text=text):
                self.assertEqual(classify_line_regex(text), expected)


class DocumentBaselineTests(SimpleTestCase):
    def test_fence_overrides_line_rules(self):
        labels = document_labels(document("```\nThe build fails.\n```\nThe build fails."))
        self.assertEqual(labels, [("```", A), ("The build fails.", A), ("```", A), ("The build fails.", N)])

    def test_blank_lines_are_skipped(self):
        labels = document_labels(document("First line.\n\n   \nSecond line."))
        self.assertEqual([text for text, _ in labels], ["First line.", "Second line."])

    def test_unfenced_document_agrees_with_line_baseline(self):
        body = "Steps:\n$ mvn install\nat org.foo.Bar.baz(Bar.java:42)\nThen it crashes."
        for text, label in document_labels(document(body)):
            with self.subTest(text=text):
                self.assertEqual(label, classify_line_regex(text))

    def test_document_artifacts_contain_line_artifacts(self):
        for doc in generate_fixture_corpus(seed=3, n_issues=30, n_docs=5).documents:
            for line, label in classify_document_regex(doc):
                if classify_line_regex(line.text) == A:
                    self.assertEqual(label, A, f"{doc.id}:{line.line_no}")


class EvaluateBaselineTests(SimpleTestCase):
    def setUp(self):
        self.doc = document(FENCED_QUERY)
        self.dataset = build_dataset([self.doc])

    def test_line_mode_misses_fenced_prose(self):
        report = evaluate_baseline(self.dataset, BaselineMode.LINE)
        self.assertEqual(report.confusion.as_dict(), {"tp": 0, "fp": 0, "fn": 3, "tn": 2})
        self.assertAlmostEqual(report.f1_macro, 2 / 7)
        self.assertEqual(report.roc_auc, 0.5)

    def test_document_mode(self):
        report = evaluate_baseline(self.dataset, "document")
        self.assertEqual(report.f1_macro, 1.0)
        self.assertEqual(report.roc_auc, 1.0)
        self.assertEqual(report.n_lines, 5)

    def test_original_documents_give_fence_context(self):
        subset = self.dataset.select([0, 2, 4])
        rebuilt = evaluate_baseline(subset, "document")
        original = evaluate_baseline(subset, "document", [self.doc])
        self.assertLess(rebuilt.f1_macro, 1.0)
        self.assertEqual(original.f1_macro, 1.0)

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            evaluate_baseline(self.dataset, "paragraph")


class BaselineCommandTests(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)
        docs = self.root / "docs"
        docs.mkdir()
        (docs / "guide.md").write_text(FENCED_QUERY + "\n", encoding="utf-8")
        self.dataset = self.root / "dataset.jsonl"
        call_command(
            "generate", docs=[str(docs)], out=str(self.dataset), stdout=StringIO(), stderr=StringIO()
        )

    def run_baseline(self, **options):
        out = StringIO()
        call_command("baseline", dataset=str(self.dataset), stdout=out, stderr=StringIO(), **options)
        return json.loads(out.getvalue())

    def test_modes(self):
        line = self.run_baseline(mode="line")
        document = self.run_baseline(mode="document", docs=[str(self.root / "docs")])
        self.assertEqual(line["mode"], "line")
        self.assertEqual(document["f1_macro"], 1.0)
        self.assertLess(line["f1_macro"], document["f1_macro"])

    def test_report_file(self):
        target = self.root / "baseline.json"
        call_command("baseline", dataset=str(self.dataset), out=str(target), stdout=StringIO(), stderr=StringIO())
        self.assertEqual(json.loads(target.read_text(encoding="utf-8"))["n_lines"], 5)
