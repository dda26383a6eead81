import numpy as np
from django.test import SimpleTestCase

from apps.autolabel.datasets import Dataset, LabeledLine
from apps.core.exceptions import DatasetError
from apps.features.vectorizer import Vocabulary, build_vocabulary, vectorize, vectorize_many
from apps.preprocess.tokenizer import ngrams, tokenize_line


def dataset(*texts):
    return Dataset(
        LabeledLine(text=text, label="nl", doc_id="doc", line_no=line_no) for line_no, text in enumerate(texts)
    )


class VocabularyTests(SimpleTestCase):
    def test_terms_are_sorted_and_indexed_by_position(self):
        vocab = build_vocabulary(dataset("b a", "a c"))
        self.assertEqual(list(vocab.terms), sorted(vocab.terms))
        for i, term in enumerate(vocab):
            self.assertEqual(vocab.index[term], i)

    def test_every_ngram_of_the_data_is_included(self):
        vocab = build_vocabulary(dataset("x = 1;"))
        for gram in ngrams(tokenize_line("x = 1;")):
            self.assertIn(gram, vocab)

    def test_min_df_counts_lines_not_occurrences(self):
        vocab = build_vocabulary(dataset("a a a", "b", "b"), n_min=1, n_max=1, min_df=2)
        self.assertIn("b", vocab)
        self.assertNotIn("a", vocab)
        self.assertIn("Jlinestart", vocab)

    def test_empty_dataset(self):
        with self.assertRaises(DatasetError):
            build_vocabulary(Dataset())

    def test_duplicate_terms_are_rejected(self):
        with self.assertRaises(ValueError):
            Vocabulary(terms=("a", "a"))


class VectorizeTests(SimpleTestCase):
    def setUp(self):
        self.vocab = build_vocabulary(dataset("the build fails", "x = 1;"))

    def test_counts_and_dimension(self):
        vector = vectorize(tokenize_line("the the"), self.vocab)
        self.assertEqual(vector.dimension, len(self.vocab))
        self.assertEqual(dict(vector.items())[self.vocab.index["the"]], 2)
        self.assertTrue(np.all(np.diff(vector.indices) > 0))
        self.assertTrue(np.all(vector.counts >= 1))

    def test_unknown_ngrams_are_ignored(self):
        vector = vectorize(tokenize_line("completely unseen words"), self.vocab)
        self.assertEqual(vector.total, 2)

    def test_batch_rows_match_single_vectors(self):
        lines = ["the build fails", "x = 1;", "", "unseen"]
        matrix = vectorize_many([tokenize_line(line) for line in lines], self.vocab)
        self.assertEqual(matrix.shape, (4, len(self.vocab)))
        for row, line in enumerate(lines):
            expected = np.zeros(len(self.vocab))
            for index, count in vectorize(tokenize_line(line), self.vocab).items():
                expected[index] = count
            np.testing.assert_array_equal(matrix[row].toarray().ravel(), expected)

    def test_counts_match_a_direct_ngram_count_on_random_lines(self):
        rng = np.random.default_rng(7)
        alphabet = ["the", "build", "x", "=", "1;", "fails", "(", ")", "foo.bar", "42", "#"]
        vocab = build_vocabulary(dataset(*(" ".join(rng.choice(alphabet, size=rng.integers(1, 8))) for _ in range(50))))
        for _ in range(200):
            line = " ".join(rng.choice(alphabet + ["unseen"], size=rng.integers(0, 10)))
            grams = ngrams(tokenize_line(line))
            vector = vectorize(tokenize_line(line), vocab)
            counts = dict(vector.items())
            self.assertEqual(vector.total, sum(1 for gram in grams if gram in vocab))
            self.assertTrue(all(index < len(vocab) for index in counts))
            for index, count in counts.items():
                self.assertEqual(count, grams.count(vocab.terms[index]))
