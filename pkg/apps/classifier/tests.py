import json
import tempfile
import time
from io import StringIO
from pathlib import Path

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.autolabel.datasets import Dataset, LabeledLine, write_dataset
from apps.autolabel.labels import Label
from apps.classifier.linear import LinearModel, decision_score, decision_scores, filter_lines, predict
from apps.classifier.persistence import load_model, save_model
from apps.classifier.training import TrainConfig, train
from apps.core.exceptions import ConfigurationError, DatasetError, ModelFormatError
from apps.features.vectorizer import Vocabulary, build_vocabulary, vectorize_many
from apps.preprocess.tokenizer import tokenize_line

ARTIFACT_TEMPLATES = (
    "int count{i} = items.size();",
    "\tat com.acme.Service{i}.run(Service.java:{i})",
    '"key{i}": {i},',
    '<entry id="{i}"/>',
)

NATURAL_TEMPLATES = (
    "The build fails on machine {i} after the upgrade.",
    "Please have a look at this problem when you can.",
    "It works with the older release but not with this one.",
    "I think the cache is not cleared between runs.",
)


def toy_dataset(per_template=10, flip=False):
    lines = []
    for label, templates in ((Label.ARTIFACT, ARTIFACT_TEMPLATES), (Label.NATURAL_LANGUAGE, NATURAL_TEMPLATES)):
        if flip:
            label = Label.NATURAL_LANGUAGE if label == Label.ARTIFACT else Label.ARTIFACT
        for template in templates:
            for i in range(per_template):
                lines.append(LabeledLine(text=template.format(i=i), label=label, doc_id=f"doc{i}", line_no=len(lines)))
    return Dataset(lines)


def keyword_model(weights, bias=-1.0):
    """A hand-made model: every listed n-gram pushes a line towards Artifact."""
    vocabulary = Vocabulary(terms=sorted(weights))
    return LinearModel(
        weights=np.array([weights[term] for term in vocabulary.terms]),
        bias=bias,
        vocabulary=vocabulary,
        config=TrainConfig(),
    )


def perceptron_separates(ds, max_epochs=1000):
    """Certify linear separability of ``ds`` over its n-gram counts plus a bias column."""
    vocabulary = build_vocabulary(ds)
    features = vectorize_many([tokenize_line(text) for text in ds.texts], vocabulary).toarray()
    features = np.hstack([features, np.ones((len(ds), 1))])
    targets = np.array([1.0 if label == Label.ARTIFACT else -1.0 for label in ds.labels])
    weights = np.zeros(features.shape[1])
    for _ in range(max_epochs):
        mistakes = 0
        for row, target in zip(features, targets):
            if target * (row @ weights) <= 0:
                weights += target * row
                mistakes += 1
        if not mistakes:
            return True
    return False


class TrainConfigTests(SimpleTestCase):
    def test_defaults(self):
        cfg = TrainConfig()
        self.assertEqual((cfg.C, cfg.n_min, cfg.n_max, cfg.sample_fraction, cfg.seed), (1.0, 1, 3, 0.4, 0))

    def test_invalid_values(self):
        for kwargs in ({"C": 0}, {"epochs": 0}, {"sample_fraction": 1.5}, {"n_min": 2, "n_max": 1}, {"min_df": 0}):
            with self.subTest(**kwargs), self.assertRaises(ConfigurationError):
                TrainConfig(**kwargs)


class TrainTests(SimpleTestCase):
    def setUp(self):
        self.cfg = TrainConfig(sample_fraction=1.0)

    def test_separates_training_data(self):
        ds = toy_dataset()
        model = train(ds, self.cfg)
        self.assertEqual([p.label for p in predict(model, ds.texts)], ds.labels)

    def test_separates_random_separable_datasets(self):
        rng = np.random.default_rng(11)
        words = ("the", "cache", "fails", "after", "upgrade", "again", "server", "slow", "pool", "user")
        identifiers = ("pool", "cache", "client", "user", "session", "reader", "config", "server")
        full = TrainConfig(sample_fraction=1.0, epochs=20)
        for case in range(20):
            lines = []
            for _ in range(int(rng.integers(5, 30))):
                receiver, method = rng.choice(identifiers, size=2)
                text = f"{rng.choice(words)} {receiver}.{method}({rng.choice(identifiers)});"
                lines.append((text, Label.ARTIFACT))
            for _ in range(int(rng.integers(5, 30))):
                text = " ".join(rng.choice(words + identifiers, size=int(rng.integers(2, 8)))) + "."
                lines.append((text, Label.NATURAL_LANGUAGE))
            ds = Dataset(
                LabeledLine(text=text, label=label, doc_id=f"doc{i}", line_no=0)
                for i, (text, label) in enumerate(lines)
            )
            with self.subTest(case=case):
                self.assertTrue(perceptron_separates(ds))
                model = train(ds, full)
                self.assertEqual([p.label for p in predict(model, ds.texts)], ds.labels)

    def test_sample_fraction(self):
        model = train(toy_dataset(), TrainConfig(sample_fraction=0.5))
        self.assertEqual(model.stats.lines_used, 40)
        self.assertEqual(model.stats.vocabulary_size, len(model.vocabulary))

    def test_deterministic(self):
        first, second = train(toy_dataset(), self.cfg), train(toy_dataset(), self.cfg)
        np.testing.assert_array_equal(first.weights, second.weights)
        self.assertEqual(first.bias, second.bias)

    def test_flipped_labels_negate_the_model(self):
        model = train(toy_dataset(), self.cfg)
        flipped = train(toy_dataset(flip=True), self.cfg)
        np.testing.assert_array_equal(flipped.weights, -model.weights)
        self.assertEqual(flipped.bias, -model.bias)

    def test_single_class(self):
        ds = Dataset(line for line in toy_dataset() if line.label == Label.ARTIFACT)
        with self.assertRaises(DatasetError):
            train(ds, self.cfg)


class PredictTests(SimpleTestCase):
    def setUp(self):
        self.model = keyword_model({"Jsemicolon": 5.0, "Jroundbracketopen": 3.0})

    def test_scores(self):
        scores = decision_scores(self.model, ["x = 1;", "plain words"])
        np.testing.assert_array_equal(scores, [4.0, -1.0])
        self.assertEqual(decision_score(self.model, "f(x);"), 7.0)
        self.assertEqual(len(decision_scores(self.model, [])), 0)

    def test_blank_lines_are_not_scored(self):
        predictions = predict(self.model, ["call();", "   ", "Some words."])
        self.assertEqual(
            [p.label for p in predictions], [Label.ARTIFACT, Label.NATURAL_LANGUAGE, Label.NATURAL_LANGUAGE]
        )
        self.assertEqual([p.blank for p in predictions], [False, True, False])
        self.assertEqual(predictions[1].score, 0.0)

    def test_zero_score_is_natural_language(self):
        model = keyword_model({"Jsemicolon": 1.0}, bias=-1.0)
        self.assertEqual(predict(model, ["x;"])[0].label, Label.NATURAL_LANGUAGE)

    def test_filter_keeps_blanks_next_to_kept_lines(self):
        lines = ["Intro text.", "", "int x = 1;", "", "Closing text.", "", "", "y();"]
        kept = filter_lines(self.model, lines, Label.NATURAL_LANGUAGE)
        self.assertEqual(kept, ["Intro text.", "", "", "Closing text.", ""])
        self.assertEqual(filter_lines(self.model, lines, "artifact"), ["", "int x = 1;", "", "", "y();"])

    def test_throughput(self):
        model = train(toy_dataset(), TrainConfig(sample_fraction=1.0))
        lines = [f"Line {i} mentions getValue({i}) and some words;" for i in range(10_000)]
        started = time.perf_counter()
        predictions = predict(model, lines)
        self.assertLess(time.perf_counter() - started, 5.0)
        self.assertEqual(len(predictions), 10_000)


class PersistenceTests(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)
        self.model = train(toy_dataset(), TrainConfig(sample_fraction=1.0, epochs=3))

    def test_round_trip_is_exact(self):
        path = self.root / "model.json"
        save_model(self.model, path)
        loaded = load_model(path)
        np.testing.assert_array_equal(loaded.weights, self.model.weights)
        self.assertEqual(loaded.bias, self.model.bias)
        self.assertEqual(loaded.vocabulary, self.model.vocabulary)
        self.assertEqual(loaded.config, self.model.config)
        texts = toy_dataset().texts
        np.testing.assert_array_equal(decision_scores(loaded, texts), decision_scores(self.model, texts))

    def test_file_layout(self):
        path = self.root / "model.json"
        save_model(self.model, path)
        payload = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(set(payload), {"format_version", "config", "bias", "vocabulary", "weights"})
        self.assertEqual(payload["format_version"], 1)
        self.assertEqual(len(payload["vocabulary"]), len(payload["weights"]))

    def test_truncated_file(self):
        path = self.root / "model.json"
        save_model(self.model, path)
        path.write_text(path.read_text(encoding="utf-8")[:40], encoding="utf-8")
        with self.assertRaises(ModelFormatError) as raised:
            load_model(path)
        self.assertIn("truncated", str(raised.exception))

    def test_version_mismatch_names_both_versions(self):
        path = self.root / "model.json"
        save_model(self.model, path)
        payload = json.loads(path.read_text(encoding="utf-8"))
        payload["format_version"] = 2
        path.write_text(json.dumps(payload), encoding="utf-8")
        with self.assertRaises(ModelFormatError) as raised:
            load_model(path)
        self.assertIn("version 2", str(raised.exception))
        self.assertIn("version 1", str(raised.exception))

    def test_length_mismatch(self):
        path = self.root / "model.json"
        save_model(self.model, path)
        payload = json.loads(path.read_text(encoding="utf-8"))
        payload["weights"].append(0.5)
        path.write_text(json.dumps(payload), encoding="utf-8")
        with self.assertRaises(ModelFormatError):
            load_model(path)

    def test_missing_file(self):
        with self.assertRaises(ModelFormatError):
            load_model(self.root / "absent.json")


class CommandTests(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)
        self.model_path = self.root / "model.json"
        save_model(keyword_model({"Jsemicolon": 5.0, "Jroundbracketopen": 3.0}), self.model_path)

    def run_command(self, name, **options):
        out = StringIO()
        call_command(name, stdout=out, stderr=StringIO(), **options)
        return out.getvalue()

    def write_input(self, text):
        path = self.root / "input.txt"
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_train(self):
        dataset_path = self.root / "dataset.jsonl"
        write_dataset(toy_dataset(), dataset_path)
        stats = json.loads(
            self.run_command("train", dataset=str(dataset_path), out=str(self.root / "trained.json"), fraction=1.0)
        )
        self.assertEqual(stats["lines_used"], 80)
        self.assertIn("vocabulary_size", stats)
        self.assertIn("seconds", stats)
        self.assertIsInstance(load_model(self.root / "trained.json"), LinearModel)

    def test_train_single_class_exits_with_status_2(self):
        dataset_path = self.root / "dataset.jsonl"
        write_dataset(Dataset(line for line in toy_dataset() if line.label == Label.ARTIFACT), dataset_path)
        with self.assertRaises(CommandError) as raised:
            self.run_command("train", dataset=str(dataset_path), out=str(self.root / "trained.json"))
        self.assertEqual(raised.exception.returncode, 2)

    def test_predict_labels(self):
        output = self.run_command(
            "predict", model=str(self.model_path), input=self.write_input("call();\n\nWords here.\n")
        )
        self.assertEqual(output.splitlines(), ["artifact", "blank", "nl"])

    def test_predict_annotated_keeps_line_count(self):
        text = "call();\n\nWords here.\n\tat x.Y.z(Y.java:1)\n"
        output = self.run_command(
            "predict", model=str(self.model_path), input=self.write_input(text), format="annotated"
        )
        self.assertEqual(len(output.splitlines()), 4)
        self.assertEqual(output.splitlines()[0], "artifact\tcall();")
        self.assertEqual(output.splitlines()[3], "artifact\t\tat x.Y.z(Y.java:1)")

    def test_predict_empty_file(self):
        self.assertEqual(self.run_command("predict", model=str(self.model_path), input=self.write_input("")), "")

    def test_filter_removes_stack_trace(self):
        text = (
            "The export fails with this trace.\n"
            "java.lang.IllegalStateException: closed (pool)\n"
            "\tat com.acme.Pool.get(Pool.java:10)\n"
            "\tat com.acme.Job.run(Job.java:20)\n"
            "\n"
            "It started after the upgrade.\n"
        )
        output = self.run_command("filter", model=str(self.model_path), input=self.write_input(text), keep="nl")
        self.assertEqual(
            output.splitlines(), ["The export fails with this trace.", "", "It started after the upgrade."]
        )

    def test_missing_model_exits_with_status_2(self):
        with self.assertRaises(CommandError) as raised:
            self.run_command("predict", model=str(self.root / "absent.json"), input=self.write_input("x"))
        self.assertEqual(raised.exception.returncode, 2)

    def test_missing_input_exits_with_status_2(self):
        with self.assertRaises(CommandError) as raised:
            self.run_command("filter", model=str(self.model_path), input=str(self.root / "absent.txt"))
        self.assertEqual(raised.exception.returncode, 2)
