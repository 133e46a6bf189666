"""Surface text features: term counts and TF-IDF over words, word n-grams and char n-grams."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

SCHEMES = ("count", "tfidf_word", "tfidf_word_ngram", "tfidf_char_ngram")

_DEFAULT_RANGES = {
    "count": (1, 1),
    "tfidf_word": (1, 1),
    "tfidf_word_ngram": (2, 3),
    "tfidf_char_ngram": (2, 3),
}


def _check_scheme(scheme: str) -> str:
    if scheme not in SCHEMES:
        raise ValueError(f"unknown feature scheme {scheme!r}; expected one of {SCHEMES}")
    return scheme


def term_kind(scheme: str) -> str:
    return "char" if scheme == "tfidf_char_ngram" else "word"


def analyze(doc: str, kind: str, ngram_range: tuple[int, int]) -> list[str]:
    """All terms of one document, with repetition."""
    lo, hi = ngram_range
    if kind == "char":
        return [doc[i : i + n] for n in range(lo, hi + 1) for i in range(len(doc) - n + 1)]
    words = doc.split()
    return [" ".join(words[i : i + n]) for n in range(lo, hi + 1) for i in range(len(words) - n + 1)]


@dataclass(frozen=True)
class Vocabulary:
    """Sorted term list with the document frequencies seen at fit time."""

    terms: tuple[str, ...]
    kind: str
    ngram_range: tuple[int, int]
    doc_freq: np.ndarray
    n_docs: int

    def __post_init__(self):
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.terms)})

    @property
    def index(self) -> dict[str, int]:
        return self._index

    def __len__(self) -> int:
        return len(self.terms)

    def idf(self) -> np.ndarray:
        return np.log((1.0 + self.n_docs) / (1.0 + self.doc_freq)) + 1.0


@dataclass
class FeatureMatrix:
    matrix: sp.csr_matrix
    vocabulary: Vocabulary
    scheme: str

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    def triples(self) -> list[tuple[int, int, float]]:
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(int(coo.row[k]), int(coo.col[k]), float(coo.data[k])) for k in order]

    def export(self, matrix_path: str | Path, vocab_path: str | Path) -> None:
        with Path(matrix_path).open("w", encoding="utf-8", newline="\n") as fh:
            for doc, col, weight in self.triples():
                value = str(int(weight)) if self.scheme == "count" else repr(weight)
                fh.write(f"{doc}\t{col}\t{value}\n")
        with Path(vocab_path).open("w", encoding="utf-8", newline="\n") as fh:
            for i, term in enumerate(self.vocabulary.terms):
                fh.write(f"{term}\t{i}\n")


def fit_vocabulary(
    corpus: Sequence[str],
    scheme: str = "count",
    ngram_range: Optional[tuple[int, int]] = None,
    min_df: int = 1,
) -> Vocabulary:
    """Collect the scheme's terms that appear in at least ``min_df`` documents."""
    _check_scheme(scheme)
    corpus = list(corpus)
    if not corpus:
        raise ValueError("cannot fit a vocabulary on an empty corpus")
    ngram_range = tuple(ngram_range or _DEFAULT_RANGES[scheme])
    if not 1 <= ngram_range[0] <= ngram_range[1]:
        raise ValueError(f"bad ngram_range {ngram_range}")
    kind = term_kind(scheme)
    df: Counter = Counter()
    for doc in corpus:
        df.update(set(analyze(doc, kind, ngram_range)))
    terms = tuple(sorted(t for t, c in df.items() if c >= min_df))
    return Vocabulary(
        terms=terms,
        kind=kind,
        ngram_range=ngram_range,
        doc_freq=np.array([df[t] for t in terms], dtype=np.float64),
        n_docs=len(corpus),
    )


def count_matrix(corpus: Iterable[str], vocab: Vocabulary) -> sp.csr_matrix:
    index = vocab.index
    indptr = [0]
    indices: list[int] = []
    data: list[int] = []
    for doc in corpus:
        counts = Counter(
            index[t] for t in analyze(doc, vocab.kind, vocab.ngram_range) if t in index
        )
        for col in sorted(counts):
            indices.append(col)
            data.append(counts[col])
        indptr.append(len(indices))
    return sp.csr_matrix(
        (np.array(data, dtype=np.float64), np.array(indices, dtype=np.int64), np.array(indptr)),
        shape=(len(indptr) - 1, len(vocab)),
    )


def transform(corpus: Iterable[str], vocab: Vocabulary, scheme: str = "count") -> FeatureMatrix:
    """Raw counts, or smoothed TF-IDF with unit L2 rows; unseen terms are ignored."""
    _check_scheme(scheme)
    X = count_matrix(corpus, vocab)
    if scheme != "count":
        X = X @ sp.diags(vocab.idf())
        X = sp.csr_matrix(X)
        norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
        norms[norms == 0] = 1.0
        X = sp.csr_matrix(sp.diags(1.0 / norms) @ X)
        X.sort_indices()
    return FeatureMatrix(X, vocab, scheme)


class SurfaceVectorizer(TransformerMixin, BaseEstimator):
    """Estimator wrapper around :func:`fit_vocabulary` and :func:`transform`.

    Parameters
    ----------
    scheme : {"count", "tfidf_word", "tfidf_word_ngram", "tfidf_char_ngram"}
    ngram_range : (int, int) or None
        Inclusive n range; None picks the scheme default ((1, 1) for word
        schemes, (2, 3) for the n-gram schemes).
    min_df : int
        Minimum number of documents a term must occur in.
    """

    def __init__(self, scheme="count", ngram_range=None, min_df=1):
        self.scheme = scheme
        self.ngram_range = ngram_range
        self.min_df = min_df

    def fit(self, X, y=None):
        self.vocabulary_ = fit_vocabulary(list(X), self.scheme, self.ngram_range, self.min_df)
        return self

    def transform(self, X):
        check_is_fitted(self, "vocabulary_")
        return transform(list(X), self.vocabulary_, self.scheme).matrix

    def transform_features(self, X) -> FeatureMatrix:
        check_is_fitted(self, "vocabulary_")
        return transform(list(X), self.vocabulary_, self.scheme)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "vocabulary_")
        return np.asarray(self.vocabulary_.terms, dtype=object)
