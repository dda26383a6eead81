"""Count vectorization of tokenized lines over n-grams of one to three tokens."""

import logging
from dataclasses import dataclass, field
from functools import cached_property, partial

import numpy as np
from sklearn.feature_extraction.text import CountVectorizer

from apps.core.exceptions import DatasetError
from apps.preprocess.tokenizer import ngrams, tokenize_line

logger = logging.getLogger(__name__)


def _line_ngrams(text, n_min, n_max):
    return ngrams(tokenize_line(text), n_min, n_max)


@dataclass(frozen=True)
class Vocabulary:
    """N-gram to feature index map; indices follow lexicographic n-gram order."""

    terms: tuple
    n_min: int = 1
    n_max: int = 3
    min_df: int = 1
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "index", {term: i for i, term in enumerate(self.terms)})
        if len(self.index) != len(self.terms):
            raise ValueError("vocabulary terms must be unique")

    def __len__(self):
        return len(self.terms)

    def __contains__(self, term):
        return term in self.index

    def __iter__(self):
        return iter(self.terms)

    @cached_property
    def counter(self):
        """A CountVectorizer fixed to these terms; it reads token sequences."""
        return CountVectorizer(
            analyzer=partial(ngrams, n_min=self.n_min, n_max=self.n_max),
            vocabulary=self.index,
            lowercase=False,
            dtype=np.float64,
        )


@dataclass(frozen=True)
class FeatureVector:
    """Sparse counts: strictly increasing indices, every count at least 1."""

    indices: np.ndarray
    counts: np.ndarray
    dimension: int

    def __len__(self):
        return len(self.indices)

    @property
    def total(self):
        return int(self.counts.sum())

    def items(self):
        return list(zip(self.indices.tolist(), self.counts.tolist()))


def build_vocabulary(ds, n_min=1, n_max=3, min_df=1):
    """Every n-gram that occurs in at least ``min_df`` distinct lines of ``ds``."""
    if not len(ds):
        raise DatasetError("cannot build a vocabulary from an empty dataset")
    counter = CountVectorizer(
        analyzer=partial(_line_ngrams, n_min=n_min, n_max=n_max),
        min_df=min_df,
        lowercase=False,
        dtype=np.float64,
    )
    try:
        counter.fit(ds.texts)
    except ValueError as exc:
        raise DatasetError(f"no n-gram occurs in {min_df} of {len(ds)} lines") from exc
    terms = counter.get_feature_names_out().tolist()
    logger.debug("vocabulary of %d n-grams from %d lines", len(terms), len(ds))
    return Vocabulary(terms=terms, n_min=n_min, n_max=n_max, min_df=min_df)


def vectorize_many(sequences, vocab):
    """One CSR row per token sequence, float64 counts; out-of-vocabulary n-grams are ignored."""
    return vocab.counter.transform(list(sequences))


def vectorize(seq, vocab):
    """Count in-vocabulary n-grams of ``seq``."""
    row = vectorize_many([seq], vocab)
    return FeatureVector(
        indices=row.indices.astype(np.int64),
        counts=row.data.astype(np.int64),
        dimension=len(vocab),
    )
