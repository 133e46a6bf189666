import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sklearn.feature_extraction.text import CountVectorizer, TfidfVectorizer

from moh.features import SCHEMES, SurfaceVectorizer, fit_vocabulary, transform
from moh.normalizer import MoHNormalizer


def test_vocabulary_examples():
    assert fit_vocabulary(["a b", "b c"], "count").terms == ("a", "b", "c")
    assert fit_vocabulary(["ab"], "tfidf_char_ngram", (2, 2)).terms == ("ab",)
    got = fit_vocabulary(["w x y z"], "tfidf_word_ngram", (2, 3)).terms
    assert set(got) == {"w x", "x y", "y z", "w x y", "x y z"}


def test_empty_corpus_rejected():
    with pytest.raises(ValueError):
        fit_vocabulary([], "count")
    with pytest.raises(ValueError):
        fit_vocabulary(["a"], "bogus")


def test_counts_single_doc():
    vocab = fit_vocabulary(["a a b"], "count")
    fm = transform(["a a b"], vocab, "count")
    assert fm.triples() == [(0, 0, 2.0), (0, 1, 1.0)]


def test_tfidf_by_hand():
    docs = ["a b", "a"]
    vocab = fit_vocabulary(docs, "tfidf_word")
    idf_a = math.log(3 / 3) + 1
    idf_b = math.log(3 / 2) + 1
    norm = math.hypot(idf_a, idf_b)
    X = transform(docs, vocab, "tfidf_word").matrix.toarray()
    assert X[0] == pytest.approx([idf_a / norm, idf_b / norm], abs=1e-12)
    assert X[1] == pytest.approx([1.0, 0.0], abs=1e-12)


def test_unseen_terms_ignored():
    vocab = fit_vocabulary(["a b"], "count")
    assert transform(["c d"], vocab).matrix.nnz == 0


def test_min_df_counts_documents():
    vocab = fit_vocabulary(["a a a", "b", "b c"], "count", min_df=2)
    assert vocab.terms == ("b",)


docs_strategy = st.lists(
    st.lists(st.sampled_from(["iss", "liye", "lye", "hai", "नहीं", "tum", "x", "weather"]), min_size=1, max_size=8).map(" ".join),
    min_size=1,
    max_size=12,
)


def _oracle(scheme, ngram_range):
    common = dict(lowercase=False, ngram_range=ngram_range)
    if scheme == "tfidf_char_ngram":
        return TfidfVectorizer(analyzer="char", **common)
    if scheme == "count":
        return CountVectorizer(token_pattern=r"\S+", **common)
    return TfidfVectorizer(token_pattern=r"\S+", **common)


@settings(max_examples=60, deadline=None)
@given(docs_strategy, st.sampled_from(SCHEMES), st.sampled_from([(1, 1), (1, 2), (2, 3)]))
def test_matches_sklearn_vectorizers(docs, scheme, ngram_range):
    if scheme != "tfidf_char_ngram" and max(len(d.split()) for d in docs) < ngram_range[0]:
        return  # empty vocabulary, sklearn refuses it
    vec = SurfaceVectorizer(scheme, ngram_range).fit(docs)
    ref = _oracle(scheme, ngram_range).fit(docs)
    assert list(vec.get_feature_names_out()) == list(ref.get_feature_names_out())
    np.testing.assert_allclose(vec.transform(docs).toarray(), ref.transform(docs).toarray(), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(docs_strategy, st.sampled_from(SCHEMES))
def test_invariants(docs, scheme):
    fm = SurfaceVectorizer(scheme).fit(docs).transform_features(docs)
    X = fm.matrix
    assert (X.data >= 0).all()
    if scheme == "count":
        assert np.array_equal(X.data, np.round(X.data))
        # column sums equal corpus term frequency
        for term, col in fm.vocabulary.index.items():
            assert X[:, col].sum() == sum(d.split().count(term) for d in docs)
    else:
        norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
        nonzero = np.diff(X.indptr) > 0
        np.testing.assert_allclose(norms[nonzero], 1.0, atol=1e-9)
    for i, doc in enumerate(docs):
        assert X[i].nnz <= len(set(SurfaceVectorizer(scheme).fit([doc]).vocabulary_.terms))
    again = SurfaceVectorizer(scheme).fit(docs).transform_features(docs)
    assert again.triples() == fm.triples() and again.vocabulary.terms == fm.vocabulary.terms


def test_export(tmp_path):
    docs = ["a a b", "b c"]
    fm = SurfaceVectorizer("count").fit(docs).transform_features(docs)
    fm.export(tmp_path / "m.tsv", tmp_path / "v.tsv")
    assert (tmp_path / "m.tsv").read_text() == "0\t0\t2\n0\t1\t1\n1\t1\t1\n1\t2\t1\n"
    assert (tmp_path / "v.tsv").read_text() == "a\t0\nb\t1\nc\t2\n"


def test_spelling_collapse_rows(resources_fx):
    raw = ["iss lye hai", "iss liye hai"]
    count = SurfaceVectorizer("count").fit(raw)
    X = count.transform(raw).toarray()
    assert not np.array_equal(X[0], X[1])

    mapped = MoHNormalizer(resources_fx).fit().transform(raw)
    assert mapped[0] == mapped[1] == "इस लिए है"
    for scheme in SCHEMES:
        M = SurfaceVectorizer(scheme).fit(mapped).transform(mapped).toarray()
        assert M[0].tobytes() == M[1].tobytes()
