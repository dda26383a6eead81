import json
import math
import random
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.autolabel.datasets import Dataset, LabeledLine, balance, split_by_documents, write_dataset
from apps.autolabel.labeling import build_dataset
from apps.autolabel.labels import Label
from apps.baseline.regex import evaluate_baseline
from apps.classifier.persistence import save_model
from apps.classifier.training import TrainConfig, train
from apps.core.exceptions import ConfigurationError, DatasetError, MetricError, RecordFormatError
from apps.corpus.fixtures import build_fixture_corpus, generate_fixture_corpus
from apps.corpus.loaders import filter_by_labels
from apps.evaluation.labelfiles import read_label_file
from apps.evaluation.metrics import ConfusionMatrix, cohen_kappa, confusion_matrix, f1_macro, roc_auc
from apps.evaluation.protocol import (
    BootstrapConfig,
    ConfidenceInterval,
    LearningCurveConfig,
    bootstrap_eval,
    evaluate_model,
    learning_curve,
    percentile_interval,
)

A = Label.ARTIFACT
N = Label.NATURAL_LANGUAGE
BUG_LABELS = {"bug", "defect", "regression"}


def brute_force_auc(scores, truth):
    positive = [score for score, label in zip(scores, truth) if label == A]
    negative = [score for score, label in zip(scores, truth) if label == N]
    wins = sum(1.0 if p > n else 0.5 if p == n else 0.0 for p in positive for n in negative)
    return wins / (len(positive) * len(negative))


def direct_f1(truth, pred):
    per_class = []
    for cls in (A, N):
        tp = sum(t == cls and p == cls for t, p in zip(truth, pred))
        fp = sum(t != cls and p == cls for t, p in zip(truth, pred))
        fn = sum(t == cls and p != cls for t, p in zip(truth, pred))
        denominator = 2 * tp + fp + fn
        per_class.append(2 * tp / denominator if denominator else 0.0)
    return (per_class[0] + per_class[1]) / 2


def direct_kappa(a, b):
    n = len(a)
    observed = sum(x == y for x, y in zip(a, b)) / n
    expected = sum(a.count(label) * b.count(label) for label in (N, A)) / (n * n)
    if expected == 1:
        return 1.0 if a == b else 0.0
    return (observed - expected) / (1 - expected)


def labeled(pairs):
    return Dataset(
        LabeledLine(text=text, label=label, doc_id=f"doc{i % 5}", line_no=i) for i, (text, label) in enumerate(pairs)
    )


def toy_dataset(per_class=20):
    pairs = [(f"value{i} = compute({i}, limit);", A) for i in range(per_class)]
    pairs += [(f"The export fails for customer {i} after the upgrade.", N) for i in range(per_class)]
    return labeled(pairs)


def constant_dataset(per_class=20):
    return labeled([("int x = 1;", A)] * per_class + [("The build fails.", N)] * per_class)


class F1Tests(SimpleTestCase):
    def test_perfect(self):
        self.assertEqual(f1_macro([A, N, A], [A, N, A]), 1.0)

    def test_two_misses_per_class(self):
        truth = [A] * 10 + [N] * 10
        pred = [A] * 8 + [N] * 2 + [N] * 8 + [A] * 2
        self.assertAlmostEqual(f1_macro(truth, pred), 0.8)

    def test_all_artifact_on_balanced_set(self):
        self.assertAlmostEqual(f1_macro([A, A, N, N], [A, A, A, A]), 1 / 3)

    def test_absent_class_scores_zero(self):
        self.assertEqual(f1_macro([A, A], [A, A]), 0.5)

    def test_length_mismatch(self):
        with self.assertRaises(MetricError):
            f1_macro([A], [A, N])
        with self.assertRaises(MetricError):
            f1_macro([], [])

    def test_accepts_label_values(self):
        self.assertEqual(f1_macro(["artifact", "nl"], [A, N]), 1.0)

    def test_confusion_matrix(self):
        cm = confusion_matrix([A, A, N, N], [A, N, A, N])
        self.assertEqual(cm, ConfusionMatrix(tp=1, fp=1, fn=1, tn=1))
        self.assertEqual(cm.total, 4)
        self.assertEqual((cm + cm).as_dict(), {"tp": 2, "fp": 2, "fn": 2, "tn": 2})


class RocAucTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(roc_auc([0.9, 0.8, 0.2, 0.1], [A, A, N, N]), 1.0)
        self.assertEqual(roc_auc([0.5] * 4, [A, A, N, N]), 0.5)
        self.assertEqual(roc_auc([0.9, 0.4, 0.6, 0.1], [A, A, N, N]), 0.75)

    def test_single_class(self):
        with self.assertRaises(MetricError) as raised:
            roc_auc([0.1, 0.2], [A, A])
        self.assertIn("AUC undefined", str(raised.exception))

    def test_length_mismatch(self):
        with self.assertRaises(MetricError):
            roc_auc([0.1], [A, N])

    def test_negated_scores(self):
        rng = random.Random(1)
        scores = rng.sample(range(1000), 50)
        truth = [rng.choice((A, N)) for _ in scores]
        truth[:2] = [A, N]
        self.assertAlmostEqual(roc_auc(scores, truth) + roc_auc([-s for s in scores], truth), 1.0, places=12)

    def test_strictly_increasing_transform(self):
        scores = [0.3, -1.2, 2.5, 0.0, 0.7, -0.4]
        truth = [A, N, A, N, N, A]
        self.assertEqual(roc_auc(scores, truth), roc_auc([math.exp(s) for s in scores], truth))


class KappaTests(SimpleTestCase):
    def test_identical_mixed_sequences(self):
        self.assertEqual(cohen_kappa([A, N, A, N, N], [A, N, A, N, N]), 1.0)

    def test_chance_agreement(self):
        self.assertEqual(cohen_kappa([A, A, N, N], [A, N, A, N]), 0.0)

    def test_degenerate_single_label(self):
        self.assertEqual(cohen_kappa([A, A, A], [A, A, A]), 1.0)

    def test_length_mismatch(self):
        with self.assertRaises(MetricError):
            cohen_kappa([A], [A, N])

    def test_random_raters_are_near_zero(self):
        rng = random.Random(7)
        a = [rng.choice((A, N)) for _ in range(10_000)]
        b = [rng.choice((A, N)) for _ in range(10_000)]
        self.assertLess(abs(cohen_kappa(a, b)), 0.05)


class MetricOracleTests(SimpleTestCase):
    def random_labels(self, rng, n):
        return [rng.choice((A, N)) for _ in range(n)]

    def test_roc_auc_matches_pair_counting(self):
        rng = random.Random(0)
        for _ in range(1000):
            n = rng.randint(2, 200)
            truth = self.random_labels(rng, n)
            if A not in truth or N not in truth:
                truth[0], truth[-1] = A, N
            scores = [round(rng.uniform(-1, 1), rng.choice((1, 2, 6))) for _ in range(n)]
            self.assertLessEqual(abs(roc_auc(scores, truth) - brute_force_auc(scores, truth)), 1e-12)

    def test_f1_and_kappa_match_direct_formulas(self):
        rng = random.Random(1)
        for _ in range(1000):
            n = rng.randint(1, 200)
            a, b = self.random_labels(rng, n), self.random_labels(rng, n)
            self.assertEqual(f1_macro(a, b), direct_f1(a, b))
            self.assertEqual(cohen_kappa(a, b), direct_kappa(a, b))

    def test_permutation_invariance(self):
        rng = random.Random(2)
        a, b = self.random_labels(rng, 100), self.random_labels(rng, 100)
        order = list(range(100))
        rng.shuffle(order)
        a2, b2 = [a[i] for i in order], [b[i] for i in order]
        self.assertAlmostEqual(f1_macro(a, b), f1_macro(a2, b2), places=12)
        self.assertAlmostEqual(cohen_kappa(a, b), cohen_kappa(a2, b2), places=12)


class IntervalTests(SimpleTestCase):
    def test_constant_values(self):
        ci = percentile_interval([0.9] * 100, 0.95)
        self.assertEqual((ci.low, ci.mean, ci.high), (0.9, 0.9, 0.9))
        self.assertFalse(ci.widened)

    def test_brackets_mean(self):
        ci = percentile_interval([0.0] * 99 + [100.0], 0.95)
        self.assertLessEqual(ci.low, ci.mean)
        self.assertLessEqual(ci.mean, ci.high)
        self.assertEqual(ci.high, 1.0)
        self.assertEqual((ci.percentile_low, ci.percentile_high), (0.0, 0.0))
        self.assertTrue(ci.widened)
        payload = ci.as_dict("ci")
        self.assertEqual((payload["ci_percentile_high"], payload["ci_high"]), (0.0, 1.0))
        self.assertTrue(payload["ci_widened"])

    def test_direct_interval_reports_no_percentiles(self):
        ci = ConfidenceInterval(low=0.5, high=0.7, mean=0.6)
        self.assertFalse(ci.widened)
        self.assertEqual(ci.as_dict("auc_ci"), {"auc_ci_low": 0.5, "auc_ci_high": 0.7, "auc_ci_mean": 0.6})

    def test_invalid_interval(self):
        with self.assertRaises(ValueError):
            ConfidenceInterval(low=0.5, high=0.6, mean=0.7)


class ProtocolConfigTests(SimpleTestCase):
    def test_bootstrap_config(self):
        cfg = BootstrapConfig()
        self.assertEqual((cfg.alpha, cfg.n, cfg.split), (0.95, 100, 0.8))
        for kwargs in ({"split": 1.0}, {"split": 0}, {"n": 0}, {"alpha": 1.0}):
            with self.subTest(**kwargs), self.assertRaises(ConfigurationError):
                BootstrapConfig(**kwargs)

    def test_learning_curve_config(self):
        self.assertEqual(LearningCurveConfig(fractions=[0.5, 1]).fractions, (0.5, 1.0))
        for fractions in ((0.5, 0.1), (0.5, 0.5), (0.0, 1.0), (1.5,), ()):
            with self.subTest(fractions=fractions), self.assertRaises(ConfigurationError):
                LearningCurveConfig(fractions=fractions)


class ProtocolTests(SimpleTestCase):
    train_cfg = TrainConfig(sample_fraction=1.0)

    def test_evaluate_model(self):
        ds = toy_dataset()
        report = evaluate_model(train(ds, self.train_cfg), ds)
        self.assertEqual(report.n_lines, 40)
        self.assertEqual(report.confusion.total, 40)
        payload = report.as_dict()
        for field in ("f1_macro", "roc_auc", "tp", "fp", "fn", "tn", "n_lines", "ci_low", "ci_high", "ci_mean"):
            self.assertIn(field, payload)
        self.assertIsNone(payload["ci_low"])

    def test_bootstrap_collects_every_iteration(self):
        report = bootstrap_eval(toy_dataset(), BootstrapConfig(n=5), self.train_cfg)
        self.assertEqual(len(report.f1_samples), 5)
        self.assertEqual(len(report.auc_samples), 5)
        self.assertLessEqual(report.ci.low, report.f1_macro)
        self.assertLessEqual(report.f1_macro, report.ci.high)
        self.assertEqual(report.n_lines, 5 * 8)
        self.assertIn("auc_ci_low", report.as_dict())
        self.assertIn("ci_widened", report.as_dict())
        self.assertIn("auc_ci_percentile_high", report.as_dict())

    def test_bootstrap_degenerate_folds(self):
        report = bootstrap_eval(constant_dataset(), BootstrapConfig(n=4), self.train_cfg)
        self.assertEqual((report.ci.low, report.ci.mean, report.ci.high), (1.0, 1.0, 1.0))

    def test_bootstrap_ignores_worker_count(self):
        cfg = BootstrapConfig(n=4, seed=3)
        sequential = bootstrap_eval(toy_dataset(), cfg, self.train_cfg)
        parallel = bootstrap_eval(toy_dataset(), cfg, self.train_cfg, workers=3)
        self.assertEqual(sequential.f1_samples, parallel.f1_samples)
        self.assertEqual(sequential.auc_samples, parallel.auc_samples)

    def test_bootstrap_needs_two_lines_per_class(self):
        with self.assertRaises(DatasetError):
            bootstrap_eval(
                labeled([("x;", A), ("Words.", N), ("More words.", N)]), BootstrapConfig(n=2), self.train_cfg
            )

    def test_learning_curve(self):
        ds = toy_dataset()
        points = learning_curve(ds, ds, LearningCurveConfig(fractions=(0.5, 1.0), runs=3), self.train_cfg)
        self.assertEqual([point.fraction for point in points], [0.5, 1.0])
        self.assertEqual(len(points[0].auc_scores), 3)
        self.assertEqual(points[1].auc_std, 0.0)
        self.assertEqual(points[1].f1_std, 0.0)
        self.assertEqual(
            set(points[0].as_dict()), {"fraction", "roc_auc_mean", "roc_auc_std", "f1_mean", "f1_std", "runs"}
        )


class LabelFileTests(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)

    def write(self, name, text):
        path = self.root / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_read(self):
        self.assertEqual(read_label_file(self.write("a.txt", "nl\nartifact\n")), [N, A])

    def test_schema_error_names_line(self):
        with self.assertRaises(RecordFormatError) as raised:
            read_label_file(self.write("a.txt", "nl\nmaybe\n"))
        self.assertEqual(raised.exception.line_no, 2)

    def test_kappa_command(self):
        a = self.write("a.txt", "nl\nartifact\nnl\n")
        out = StringIO()
        call_command("kappa", a=a, b=a, stdout=out)
        self.assertEqual(float(out.getvalue()), 1.0)

    def test_kappa_command_schema_error(self):
        a = self.write("a.txt", "nl\nartifact\n")
        b = self.write("b.txt", "nl\nART\n")
        with self.assertRaises(CommandError) as raised:
            call_command("kappa", a=a, b=b, stdout=StringIO())
        self.assertEqual(raised.exception.returncode, 2)
        self.assertIn("b.txt:2", str(raised.exception))


class EvaluationCommandTests(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)
        self.dataset = self.root / "dataset.jsonl"
        write_dataset(toy_dataset(), self.dataset)

    def run_command(self, name, **options):
        out = StringIO()
        call_command(name, stdout=out, stderr=StringIO(), **options)
        return json.loads(out.getvalue())

    def test_evaluate(self):
        model = self.root / "model.json"
        save_model(train(toy_dataset(), TrainConfig(sample_fraction=1.0)), model)
        report = self.run_command("evaluate", model=str(model), dataset=str(self.dataset))
        self.assertEqual(report["n_lines"], 40)
        self.assertEqual(report["tp"] + report["fp"] + report["fn"] + report["tn"], 40)

    def test_evaluate_to_file(self):
        model = self.root / "model.json"
        save_model(train(toy_dataset(), TrainConfig(sample_fraction=1.0)), model)
        out = self.root / "report.json"
        call_command(
            "evaluate", model=str(model), dataset=str(self.dataset), out=str(out), stdout=StringIO(), stderr=StringIO()
        )
        self.assertIn("roc_auc", json.loads(out.read_text(encoding="utf-8")))

    def test_bootstrap(self):
        report = self.run_command("bootstrap", dataset=str(self.dataset), n=3, fraction=1.0)
        self.assertEqual(len(report["f1_samples"]), 3)
        self.assertLessEqual(report["ci_low"], report["ci_mean"])

    def test_learning_curve(self):
        result = self.run_command(
            "learning_curve", train=str(self.dataset), evaluation=str(self.dataset), fractions="0.5,1.0", runs=2
        )
        self.assertEqual([point["fraction"] for point in result["points"]], [0.5, 1.0])

    def test_learning_curve_rejects_bad_fractions(self):
        with self.assertRaises(CommandError) as raised:
            self.run_command(
                "learning_curve", train=str(self.dataset), evaluation=str(self.dataset), fractions="1.0,0.5"
            )
        self.assertEqual(raised.exception.returncode, 2)


class FixtureCorpusAcceptanceTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        corpus = generate_fixture_corpus(seed=0)
        cls.documents = filter_by_labels(corpus.documents, BUG_LABELS)
        cls.dataset = build_dataset(cls.documents)
        train_set, cls.test_set = split_by_documents(cls.dataset, 0.2, seed=0)
        cls.train_set = balance(train_set, seed=0)
        cls.train_cfg = TrainConfig(seed=0)
        cls.model = train(cls.train_set, cls.train_cfg)
        cls.report = evaluate_model(cls.model, cls.test_set)

        kept, held_out = {doc.id for doc in cls.documents}, set(cls.test_set.doc_ids)
        cls.truth = Dataset(line for line in corpus.truth if line.doc_id in kept)
        cls.held_out_truth = Dataset(line for line in cls.truth if line.doc_id in held_out)

    def test_corpus_size(self):
        self.assertGreaterEqual(len(self.dataset.doc_ids), 60)

    def test_model_quality(self):
        self.assertGreaterEqual(self.report.f1_macro, 0.90)
        self.assertGreaterEqual(self.report.roc_auc, 0.93)

    def test_model_quality_on_hand_labels(self):
        report = evaluate_model(self.model, self.held_out_truth)
        self.assertGreaterEqual(report.f1_macro, 0.85)
        self.assertGreaterEqual(report.roc_auc, 0.90)
        line = evaluate_baseline(self.held_out_truth, "line")
        self.assertGreaterEqual(report.f1_macro - line.f1_macro, 0.05)

    def test_baselines_on_hand_labels(self):
        line = evaluate_baseline(self.truth, "line")
        document = evaluate_baseline(self.truth, "document", self.documents)
        self.assertLess(document.f1_macro, 1.0)
        self.assertGreaterEqual(document.f1_macro, line.f1_macro)

    def test_automatic_labels_are_noisy_but_mostly_right(self):
        truth = {(line.doc_id, line.line_no): line.label for line in self.truth}
        self.assertTrue(all((line.doc_id, line.line_no) in truth for line in self.dataset))
        disagreements = sum(truth[(line.doc_id, line.line_no)] != line.label for line in self.dataset)
        self.assertGreater(disagreements, 0)
        rng = random.Random(0)
        for label in Label:
            with self.subTest(label=label):
                lines = [line for line in self.dataset if line.label == label]
                sample = rng.sample(lines, min(600, len(lines)))
                agreeing = sum(truth[(line.doc_id, line.line_no)] == label for line in sample)
                self.assertGreaterEqual(agreeing / len(sample), 0.9)

    def test_training_time(self):
        self.assertLess(self.model.stats.seconds, 60)

    def test_model_beats_line_baseline(self):
        line = evaluate_baseline(self.test_set, "line")
        self.assertGreaterEqual(self.report.f1_macro - line.f1_macro, 0.05)

    def test_document_baseline_beats_line_baseline(self):
        line = evaluate_baseline(self.test_set, "line")
        document = evaluate_baseline(self.test_set, "document", self.documents)
        self.assertGreaterEqual(document.f1_macro, line.f1_macro)

    def test_learning_curve_rises(self):
        cfg = LearningCurveConfig(fractions=(0.1, 0.5, 1.0), runs=10, seed=0)
        points = learning_curve(self.train_set, self.test_set, cfg, self.train_cfg)
        self.assertTrue(all(len(point.auc_scores) == 10 for point in points))
        self.assertGreaterEqual(points[-1].auc_mean, points[0].auc_mean)

    def test_bootstrap_interval(self):
        report = bootstrap_eval(
            balance(self.dataset, seed=0), BootstrapConfig(n=100, alpha=0.95, seed=0), TrainConfig()
        )
        self.assertEqual(len(report.f1_samples), 100)
        self.assertLessEqual(report.ci.low, report.f1_macro)
        self.assertLessEqual(report.f1_macro, report.ci.high)
        self.assertLessEqual(report.ci.width, 0.15)


class PipelineDeterminismTests(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)
        build_fixture_corpus(self.root / "corpus", seed=0, n_issues=70, n_docs=8)

    def run_pipeline(self, name):
        out = self.root / name
        corpus = self.root / "corpus"
        quiet = {"stdout": StringIO(), "stderr": StringIO()}
        call_command(
            "generate",
            issues=[str(corpus / "issues")],
            docs=[str(corpus / "docs")],
            out=str(out / "train.jsonl"),
            test_out=str(out / "test.jsonl"),
            report=str(out / "generate.json"),
            balance=True,
            seed=0,
            **quiet,
        )
        call_command("train", dataset=str(out / "train.jsonl"), out=str(out / "model.json"), seed=0, **quiet)
        call_command(
            "evaluate",
            model=str(out / "model.json"),
            dataset=str(out / "test.jsonl"),
            out=str(out / "eval.json"),
            **quiet,
        )
        return out

    def test_two_runs_are_byte_identical(self):
        first, second = self.run_pipeline("first"), self.run_pipeline("second")
        for name in ("train.jsonl", "test.jsonl", "model.json", "eval.json"):
            with self.subTest(file=name):
                self.assertEqual((first / name).read_bytes(), (second / name).read_bytes())
        reports = [json.loads((run / "generate.json").read_text(encoding="utf-8")) for run in (first, second)]
        for report in reports:
            del report["output"]["out"], report["output"]["test_out"]
        self.assertEqual(reports[0], reports[1])

    def test_reports_are_populated(self):
        out = self.run_pipeline("run")
        report = json.loads((out / "eval.json").read_text(encoding="utf-8"))
        for field in ("f1_macro", "roc_auc", "tp", "fp", "fn", "tn", "n_lines"):
            self.assertIsNotNone(report[field])
        generation = json.loads((out / "generate.json").read_text(encoding="utf-8"))
        self.assertTrue(generation["noise_filters"]["rule_hits"])
        self.assertTrue(generation["output"]["balanced"])
