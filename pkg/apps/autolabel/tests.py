import tempfile
from collections import Counter
from pathlib import Path

from django.test import SimpleTestCase

from apps.autolabel.datasets import (
    Dataset,
    LabeledLine,
    balance,
    read_dataset,
    split_by_documents,
    split_train_test,
    stratified_sample,
    write_dataset,
)
from apps.autolabel.labeling import GenerationReport, apply_noise_filters, build_dataset, contributes, split_markdown
from apps.autolabel.labels import Label, Provenance
from apps.autolabel.rules import (
    DISCARD_BANK,
    JAVA_BANK,
    LINE_ARTIFACT_RULES,
    LOGGING_BANK,
    MARKDOWN_RULES,
    PROMPT_BANK,
    RULESET_VERSION,
    STRUCTURED_DATA_BANK,
    Action,
    fence_mask,
    match_markdown_rule,
    match_noise_rule,
)
from apps.core.exceptions import DatasetError, RecordFormatError
from apps.corpus.documents import Document, DocumentKind

RULE_EXAMPLES = {
    "indented_code": (["    return x;", "\tfoo()"], ["   three spaces", "text"]),
    "standalone_image": (["![screenshot](shot.png)"], ["See ![x](y.png) here."]),
    "standalone_link": (["[docs](https://example.org/docs)"], ["Read the [docs](https://x.org) first."]),
    "standalone_url": (["https://example.org/issues/12", "<https://example.org>"], ["see https://example.org"]),
    "table_row": (["| a | b |"], ["a | b"]),
    "table_separator": (["--- | ---", "|:---|---:|"], ["-----"]),
    "blockquote": (["> quoted text"], ["a > b"]),
    "unix_prompt": (
        ["$ mvn clean install", "user@host:~/project$ ls -la", "# apt-get install curl"],
        ["# Heading", "It costs $ 5"],
    ),
    "windows_prompt": (["C:\\Users\\dev> dir", "PS C:\\repo> git status"], ["C: drive is full"]),
    "json_like": (['"name": "value",', "{", '{"a": 1, "b": 2}', "  ],"], ['He said "hi": then left']),
    "xml_open_tag": (["<dependency>", '<?xml version="1.0"?>'], ["a < b", "<3 this library"]),
    "xml_close_tag": (["</dependency>", "<br/>"], ["<dependency>"]),
    "java_statement": (["int x = compute(a, b);", "    list.add(item);"], ["// just a comment;", "The end."]),
    "java_declaration": (
        ["public class CacheManager {", "public void run() {", "} catch (IOException e) {", "if (x > 0) {"],
        ["If you click it, it breaks."],
    ),
    "java_import": (["import java.util.List;", "package com.acme.cache;"], ["import the data first"]),
    "stack_frame": (
        ["\tat com.acme.Foo.bar(Foo.java:42)", "\t... 12 more", "at java.base/java.lang.Thread.run(Thread.java:833)"],
        ["at first it worked"],
    ),
    "annotation": (["@Override", '@SuppressWarnings("unchecked")'], ["@john can you check this?"]),
    "timestamp_prefix": (
        ["2024-01-15 10:23:45,123 INFO Starting", "[10:23:45] something", "Jan 15, 2024 10:23:45 AM org.x.Y run"],
        ["In 2024 we upgraded"],
    ),
    "log_level": (
        ["ERROR: connection refused", "[WARN] disk almost full"],
        ["Error handling is broken", "INFO is missing"],
    ),
    "logger_path": (["com.acme.cache.CacheManager - started"], ["See the docs - they are great"]),
    "exception_header": (
        ["java.lang.NullPointerException: value", "Caused by: java.io.IOException", "IllegalStateException: closed"],
        ["The exception happens on startup"],
    ),
    "symbols_only": (["----", "***"], ["a-b"]),
    "short_key_value": (
        ["OS: Ubuntu 22.04", "- Version: 2.3.1"],
        ["The build fails when I run it with the default settings."],
    ),
}

ALL_RULES = MARKDOWN_RULES + PROMPT_BANK + STRUCTURED_DATA_BANK + JAVA_BANK + LOGGING_BANK + DISCARD_BANK


def line(text, label, doc_id="doc", line_no=0):
    return LabeledLine(text=text, label=label, doc_id=doc_id, line_no=line_no)


def dataset(n_artifact, n_natural, docs=1):
    lines = [line(f"x{i} = 1;", Label.ARTIFACT, f"doc{i % docs}", i) for i in range(n_artifact)]
    lines += [
        line(f"Sentence {i}.", Label.NATURAL_LANGUAGE, f"doc{i % docs}", n_artifact + i) for i in range(n_natural)
    ]
    return Dataset(lines)


def document(body, kind=DocumentKind.ISSUE_TICKET, doc_id="acme#1"):
    labels = {"bug"} if kind == DocumentKind.ISSUE_TICKET else set()
    return Document(id=doc_id, body=body, kind=kind, labels=labels)


class RuleTableTests(SimpleTestCase):
    def test_every_rule_has_examples(self):
        self.assertEqual({rule.name for rule in ALL_RULES}, set(RULE_EXAMPLES))

    def test_rule_expressions(self):
        for rule in ALL_RULES:
            matching, other = RULE_EXAMPLES[rule.name]
            for text in matching:
                with self.subTest(rule=rule.name, text=text):
                    self.assertTrue(rule.matches(text))
            for text in other:
                with self.subTest(rule=rule.name, text=text):
                    self.assertFalse(rule.matches(text))

    def test_discarding_rules(self):
        discarding = {rule.name for rule in ALL_RULES if rule.action == Action.DISCARD}
        self.assertEqual(discarding, {"blockquote", "symbols_only", "short_key_value"})

    def test_line_rules_leave_out_discarding_banks(self):
        self.assertEqual({rule.bank for rule in LINE_ARTIFACT_RULES}, {"M2", "M3", "M4", "P", "X", "J", "L"})

    def test_markdown_rules_come_first(self):
        self.assertEqual(match_markdown_rule("    at com.x.Y.z(Y.java:1)").name, "indented_code")

    def test_noise_banks_in_order(self):
        self.assertEqual(match_noise_rule("$ java -jar app.jar").bank, "P")
        self.assertIsNone(match_noise_rule("The build fails on Windows."))

    def test_ruleset_version(self):
        self.assertEqual(RULESET_VERSION, 1)


class FenceTests(SimpleTestCase):
    def test_fence_includes_delimiters(self):
        self.assertEqual(fence_mask(["text", "```java", "int x;", "```", "after"]), [False, True, True, True, False])

    def test_unclosed_fence_runs_to_the_end(self):
        self.assertEqual(fence_mask(["text", "```", "code", "more"]), [False, True, True, True])

    def test_fence_closes_only_with_the_same_character(self):
        self.assertEqual(fence_mask(["~~~", "```", "x", "~~~", "after"]), [True, True, True, True, False])

    def test_closing_fence_may_be_longer(self):
        self.assertEqual(fence_mask(["```", "x", "````", "after"]), [True, True, True, False])

    def test_shorter_fence_does_not_close(self):
        self.assertEqual(fence_mask(["````", "```", "x"]), [True, True, True])


class SplitMarkdownTests(SimpleTestCase):
    body = "Intro line.\n\n```java\nint x = 1;\n```\n> quoted\n| a | b |\nClosing words.\n"

    def test_split(self):
        artifact, natural, report = split_markdown(document(self.body))
        self.assertEqual([line.line_no for line in artifact], [2, 3, 4, 6])
        self.assertEqual([line.text for line in natural], ["Intro line.", "Closing words."])
        self.assertEqual(report.as_dict(), {"n_artifact": 4, "n_natural": 2, "n_discarded": 1, "n_blank": 1})

    def test_fence_context_overrides_content(self):
        artifact, natural, _ = split_markdown(document("```\nThe build fails.\n```"))
        self.assertEqual(len(artifact), 3)
        self.assertEqual(natural, [])

    def test_no_markup_means_all_natural(self):
        artifact, natural, report = split_markdown(document("One.\nTwo."))
        self.assertEqual((len(artifact), len(natural)), (0, 2))
        self.assertEqual(report.total, 2)

    def test_provenance(self):
        artifact, natural, _ = split_markdown(document(self.body))
        self.assertTrue(all(line.provenance == Provenance.MARKDOWN_SPLIT for line in artifact + natural))


class NoiseFilterTests(SimpleTestCase):
    def test_reclassify_discard_and_keep(self):
        candidates = [
            line("The build fails.", Label.NATURAL_LANGUAGE, line_no=0),
            line("at com.x.Y.z(Y.java:1)", Label.NATURAL_LANGUAGE, line_no=1),
            line("OS: Linux", Label.NATURAL_LANGUAGE, line_no=2),
        ]
        hits = Counter()
        natural, reclassified, discarded = apply_noise_filters(candidates, hits)
        self.assertEqual([line.line_no for line in natural], [0])
        self.assertEqual(reclassified[0].label, Label.ARTIFACT)
        self.assertEqual(reclassified[0].provenance, Provenance.NOISE_FILTER)
        self.assertEqual([line.line_no for line in discarded], [2])
        self.assertEqual(hits, Counter({"J:stack_frame": 1, "D:short_key_value": 1}))


class BuildDatasetTests(SimpleTestCase):
    def test_only_issues_with_fences_contribute(self):
        self.assertFalse(contributes(document("Just prose.\nat com.x.Y.z(Y.java:1)")))
        self.assertTrue(contributes(document("```\nx\n```")))
        self.assertTrue(contributes(document("Just prose.", DocumentKind.DOCUMENTATION_FILE, "readme.md")))

    def test_build(self):
        docs = [
            document("Text here.\n```\nx = 1\n```\nat com.x.Y.z(Y.java:1)\nMore text."),
            document("No fences at all.", doc_id="acme#2"),
            document("# Title\n\n    indented();\n", DocumentKind.DOCUMENTATION_FILE, "readme.md"),
        ]
        report = GenerationReport()
        ds = build_dataset(docs, report)
        self.assertEqual(report.documents, 3)
        self.assertEqual(report.contributing_documents, 2)
        self.assertEqual(report.reclassified, 1)
        self.assertEqual(ds.n_artifact, 5)
        self.assertEqual(ds.n_natural, 3)
        self.assertEqual([line.line_no for line in ds.lines if line.doc_id == "acme#1"], [0, 1, 2, 3, 4, 5])
        payload = report.as_dict()
        self.assertEqual(payload["ruleset_version"], RULESET_VERSION)
        self.assertEqual(payload["noise_filters"]["rule_hits"], {"J:stack_frame": 1})


class LabeledLineTests(SimpleTestCase):
    def test_rejects_multi_line_and_blank_text(self):
        with self.assertRaises(DatasetError):
            line("a\nb", Label.ARTIFACT)
        with self.assertRaises(DatasetError):
            line("   ", Label.ARTIFACT)

    def test_coerces_label_values(self):
        self.assertIs(line("x", "artifact").label, Label.ARTIFACT)


class SamplingTests(SimpleTestCase):
    def test_balance_downsamples_majority(self):
        balanced = balance(dataset(30, 10), seed=0)
        self.assertEqual((balanced.n_artifact, balanced.n_natural), (10, 10))
        self.assertTrue(balanced.is_balanced)

    def test_balance_is_seeded(self):
        self.assertEqual(balance(dataset(30, 10), 3).texts, balance(dataset(30, 10), 3).texts)

    def test_balance_single_class(self):
        with self.assertRaises(DatasetError):
            balance(dataset(5, 0), seed=0)

    def test_stratified_sample_rounds_per_class(self):
        sample = stratified_sample(dataset(1000, 500), 0.4, seed=0)
        self.assertEqual((sample.n_artifact, sample.n_natural), (400, 200))

    def test_full_fraction_returns_dataset(self):
        ds = dataset(3, 3)
        self.assertIs(stratified_sample(ds, 1.0, seed=0), ds)

    def test_invalid_fraction(self):
        with self.assertRaises(DatasetError):
            stratified_sample(dataset(3, 3), 0, seed=0)

    def test_split_by_predicate(self):
        train, test = split_train_test(dataset(10, 10, docs=4), lambda doc_id: doc_id == "doc1")
        self.assertEqual(set(test.doc_ids), {"doc1"})
        self.assertNotIn("doc1", train.doc_ids)
        self.assertEqual(len(train) + len(test), 20)

    def test_split_by_documents(self):
        ds = dataset(50, 50, docs=10)
        train, test = split_by_documents(ds, 0.2, seed=0)
        self.assertEqual(len(test.doc_ids), 2)
        self.assertFalse(set(train.doc_ids) & set(test.doc_ids))
        self.assertEqual(split_by_documents(ds, 0.2, seed=0)[1].texts, test.texts)


class DatasetFileTests(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.path = Path(directory.name) / "dataset.jsonl"

    def test_write_then_read(self):
        ds = Dataset(
            [line("  indented ;", Label.ARTIFACT, "a", 3), line("Ünïcode text.", Label.NATURAL_LANGUAGE, "b", 0)]
        )
        write_dataset(ds, self.path)
        self.assertEqual(read_dataset(self.path), ds)
        self.assertTrue(self.path.read_bytes().endswith(b"\n"))

    def test_schema_error_names_line(self):
        self.path.write_text(
            '{"text": "ok", "label": "nl", "doc_id": "a", "line_no": 0}\n'
            '{"text": "bad", "label": "maybe", "doc_id": "a", "line_no": 1}\n',
            encoding="utf-8",
        )
        with self.assertRaises(RecordFormatError) as raised:
            read_dataset(self.path)
        self.assertEqual(raised.exception.line_no, 2)
