"""Bag-of-words and tf-idf feature matrices over SAX documents."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin

from . import sax
from ._validation import as_series_list, check_fraction
from .sax import SaxDocument, SaxParams


@dataclass(frozen=True)
class FrequencyFilter:
    """Inclusive document-frequency band: min_freq <= df/n <= max_freq."""

    min_freq: float
    max_freq: float

    def __post_init__(self):
        check_fraction(self.min_freq, "min_freq")
        check_fraction(self.max_freq, "max_freq")
        if self.max_freq <= 0:
            raise ValueError(f"max_freq must be positive, got {self.max_freq}")
        if self.min_freq >= self.max_freq:
            raise ValueError(
                f"min_freq {self.min_freq} must be smaller than max_freq {self.max_freq}"
            )


@dataclass(frozen=True)
class Vocabulary:
    """Sorted distinct words with aligned document frequencies."""

    words: tuple[str, ...]
    doc_frequency: np.ndarray

    def __post_init__(self):
        df = np.asarray(self.doc_frequency, dtype=np.int64)
        if df.shape != (len(self.words),):
            raise ValueError("doc_frequency length does not match words")
        df.flags.writeable = False
        object.__setattr__(self, "doc_frequency", df)

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class FeatureMatrix:
    """One feature row per series; columns follow the vocabulary order."""

    kind: str
    words: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in ("bow", "tfidf"):
            raise ValueError(f"kind must be 'bow' or 'tfidf', got {self.kind!r}")
        values = np.asarray(self.values)
        if values.ndim != 2 or values.shape[1] != len(self.words):
            raise ValueError("values shape does not match vocabulary")
        object.__setattr__(self, "values", values)


def build_vocabulary(docs: list[SaxDocument]) -> Vocabulary:
    """Sorted union of document words with document frequencies."""
    if not docs:
        raise ValueError("no documents")
    words = sorted({w for d in docs for w in d.words})
    index = {w: i for i, w in enumerate(words)}
    df = np.zeros(len(words), dtype=np.int64)
    for d in docs:
        for w in set(d.words):
            df[index[w]] += 1
    return Vocabulary(tuple(words), df)


def bow_matrix(docs: list[SaxDocument]) -> FeatureMatrix:
    """Occurrence counts of every vocabulary word in every document.

    The vocabulary is the unfiltered sorted union, so each row sums to the
    document's word count.
    """
    if not docs or all(len(d.words) == 0 for d in docs):
        raise ValueError("bow_matrix needs at least one non-empty document")
    vocab = build_vocabulary(docs)
    index = {w: i for i, w in enumerate(vocab.words)}
    counts = np.zeros((len(docs), len(vocab)), dtype=np.int64)
    for i, d in enumerate(docs):
        for w in d.words:
            counts[i, index[w]] += 1
    return FeatureMatrix("bow", vocab.words, counts)


def tfidf_matrix(docs: list[SaxDocument], freq_filter: FrequencyFilter) -> FeatureMatrix:
    """Term-frequency times inverse-document-frequency weights.

    TF is the word's count divided by the document's total word count; IDF
    is ln(n / df) with no smoothing; the vocabulary keeps only words whose
    df/n lies inside the filter band (bounds inclusive). No row
    normalization is applied.
    """
    if len(docs) < 2:
        raise ValueError("tfidf_matrix needs at least 2 documents")
    vocab = build_vocabulary(docs)
    n = len(docs)
    ratio = vocab.doc_frequency / n
    keep = (ratio >= freq_filter.min_freq) & (ratio <= freq_filter.max_freq)
    if not keep.any():
        raise ValueError(
            f"frequency filter [{freq_filter.min_freq}, {freq_filter.max_freq}]"
            " removed every word"
        )
    words = tuple(w for w, k in zip(vocab.words, keep) if k)
    index = {w: i for i, w in enumerate(words)}
    counts = np.zeros((n, len(words)), dtype=np.float64)
    lengths = np.zeros(n, dtype=np.float64)
    for i, d in enumerate(docs):
        lengths[i] = len(d.words)
        for w in d.words:
            j = index.get(w)
            if j is not None:
                counts[i, j] += 1.0
    tf = counts / np.where(lengths == 0.0, 1.0, lengths)[:, None]
    idf = np.log(n / vocab.doc_frequency[keep])
    return FeatureMatrix("tfidf", words, tf * idf[None, :])


def write_feature_csv(fm: FeatureMatrix, ids, path) -> None:
    """Dump a feature matrix with one id column and one column per word."""
    ids = list(ids)
    if len(ids) != fm.values.shape[0]:
        raise ValueError("ids length does not match matrix rows")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(["id"] + list(fm.words)) + "\n")
        for sid, row in zip(ids, fm.values):
            if fm.kind == "bow":
                cells = [str(int(v)) for v in row]
            else:
                cells = [repr(float(v)) for v in row]
            fh.write(",".join([str(sid)] + cells) + "\n")


# ---------------------------------------------------------------------------
# code-level plumbing shared with the selection sweep
# ---------------------------------------------------------------------------


def _counts_csr(code_docs: list[np.ndarray]) -> tuple[np.ndarray, sp.csr_matrix]:
    """Sorted vocabulary codes and the sparse count matrix."""
    uniq_counts = [np.unique(c, return_counts=True) for c in code_docs]
    if uniq_counts:
        vocab = np.unique(np.concatenate([u for u, _ in uniq_counts]))
    else:
        vocab = np.empty(0, np.int64)
    indptr = np.zeros(len(code_docs) + 1, dtype=np.int64)
    for i, (u, _) in enumerate(uniq_counts):
        indptr[i + 1] = indptr[i] + u.size
    indices = np.empty(indptr[-1], dtype=np.int64)
    data = np.empty(indptr[-1], dtype=np.float64)
    for i, (u, c) in enumerate(uniq_counts):
        indices[indptr[i] : indptr[i + 1]] = np.searchsorted(vocab, u)
        data[indptr[i] : indptr[i + 1]] = c
    X = sp.csr_matrix((data, indices, indptr), shape=(len(code_docs), vocab.size))
    return vocab, X


def _tfidf_csr(
    counts: sp.csr_matrix, doc_lengths: np.ndarray, freq_filter: FrequencyFilter
) -> sp.csr_matrix:
    """Sparse mirror of tfidf_matrix: identical per-entry operations."""
    n = counts.shape[0]
    df = np.bincount(counts.indices, minlength=counts.shape[1]).astype(np.int64)
    ratio = df / n
    keep = (ratio >= freq_filter.min_freq) & (ratio <= freq_filter.max_freq)
    if not keep.any():
        raise ValueError(
            f"frequency filter [{freq_filter.min_freq}, {freq_filter.max_freq}]"
            " removed every word"
        )
    X = counts[:, keep].tocsr()
    lengths = np.where(doc_lengths == 0, 1, doc_lengths).astype(np.float64)
    expanded = np.repeat(lengths, np.diff(X.indptr))
    idf = np.log(n / df[keep])
    X = X.astype(np.float64)
    X.data = (X.data / expanded) * idf[X.indices]
    return X


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------


class _SaxVectorizer(BaseEstimator, TransformerMixin):
    """Shared symbolization plumbing for the two vectorizer estimators."""

    def __init__(self, window_length=10, word_length=5, alphabet_size=4):
        self.window_length = window_length
        self.word_length = word_length
        self.alphabet_size = alphabet_size

    def _sax_params(self) -> SaxParams:
        return SaxParams(self.window_length, self.word_length, self.alphabet_size)

    def _documents(self, X) -> list[np.ndarray]:
        series = as_series_list(X)
        shortest = min(len(s) for s in series)
        if self.window_length > shortest:
            raise ValueError(
                f"window_length {self.window_length} exceeds shortest series {shortest}"
            )
        return sax.dataset_codes(series, self._sax_params())


class SaxBagOfWords(_SaxVectorizer):
    """Count SAX words per series over the vocabulary learned in fit.

    Attributes (after fit)
    ----------------------
    vocabulary_ : tuple of str
    doc_frequency_ : ndarray
    """

    def fit(self, X, y=None):
        code_docs = self._documents(X)
        vocab, counts = _counts_csr(code_docs)
        self._vocab_codes = vocab
        params = self._sax_params()
        self.vocabulary_ = tuple(sax.decode_word(int(c), params) for c in vocab)
        self.doc_frequency_ = np.bincount(counts.indices, minlength=vocab.size).astype(np.int64)
        return self

    def transform(self, X) -> np.ndarray:
        code_docs = self._documents(X)
        out = np.zeros((len(code_docs), self._vocab_codes.size), dtype=np.int64)
        for i, codes in enumerate(code_docs):
            uniq, cnt = np.unique(codes, return_counts=True)
            pos = np.searchsorted(self._vocab_codes, uniq)
            hit = (pos < self._vocab_codes.size) & (self._vocab_codes[np.minimum(pos, self._vocab_codes.size - 1)] == uniq)
            out[i, pos[hit]] = cnt[hit]
        return out


class SaxTfidf(_SaxVectorizer):
    """Tf-idf weights over the frequency-filtered vocabulary from fit.

    Attributes (after fit)
    ----------------------
    vocabulary_ : tuple of str
    idf_ : ndarray
    """

    def __init__(
        self,
        window_length=10,
        word_length=5,
        alphabet_size=4,
        min_freq=0.0,
        max_freq=1.0,
    ):
        super().__init__(window_length, word_length, alphabet_size)
        self.min_freq = min_freq
        self.max_freq = max_freq

    def fit(self, X, y=None):
        flt = FrequencyFilter(self.min_freq, self.max_freq)
        code_docs = self._documents(X)
        vocab, counts = _counts_csr(code_docs)
        n = len(code_docs)
        if n < 2:
            raise ValueError("tf-idf needs at least 2 series")
        df = np.bincount(counts.indices, minlength=vocab.size).astype(np.int64)
        ratio = df / n
        keep = (ratio >= flt.min_freq) & (ratio <= flt.max_freq)
        if not keep.any():
            raise ValueError(
                f"frequency filter [{flt.min_freq}, {flt.max_freq}] removed every word"
            )
        params = self._sax_params()
        self._vocab_codes = vocab[keep]
        self.vocabulary_ = tuple(sax.decode_word(int(c), params) for c in self._vocab_codes)
        self.idf_ = np.log(n / df[keep])
        return self

    def transform(self, X) -> np.ndarray:
        code_docs = self._documents(X)
        out = np.zeros((len(code_docs), self._vocab_codes.size), dtype=np.float64)
        for i, codes in enumerate(code_docs):
            uniq, cnt = np.unique(codes, return_counts=True)
            pos = np.searchsorted(self._vocab_codes, uniq)
            hit = (pos < self._vocab_codes.size) & (self._vocab_codes[np.minimum(pos, self._vocab_codes.size - 1)] == uniq)
            length = float(codes.size) if codes.size else 1.0
            out[i, pos[hit]] = (cnt[hit] / length) * self.idf_[pos[hit]]
        return out
