"""Symbolic pattern forest clustering.

Each tree recursively splits the series on the presence or absence of a
randomly drawn vocabulary word; the ensemble's co-association fractions are
then agglomerated (average linkage) down to the requested cluster count.

Randomness is counted: tree t draws from its own integer substream derived
from (rng_seed, t), so results are bit-identical regardless of execution
order, platform, or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit
from sklearn.base import BaseEstimator, ClusterMixin

from . import sax
from ._linkage import average_linkage_merges, labels_at_k
from ._validation import as_series_list, check_positive_int
from .sax import SaxDocument, SaxParams

MAX_SPLIT_ATTEMPTS = 32
DEPTH_CAP_SLACK = 4

_U64 = np.uint64
_GAMMA64 = _U64(0x9E3779B97F4A7C15)
_MASK32 = _U64(0xFFFFFFFF)
_SPAN32 = _U64(0x100000000)


@dataclass(frozen=True)
class SpfParams:
    """Forest configuration: symbolization, ensemble size, split arity, seed."""

    sax: SaxParams
    ensemble_size: int = 100
    patterns_per_split: int = 1
    rng_seed: int = 0

    def __post_init__(self):
        check_positive_int(self.ensemble_size, "ensemble_size")
        check_positive_int(self.patterns_per_split, "patterns_per_split")
        check_positive_int(self.rng_seed, "rng_seed", minimum=-(2**63))


@dataclass(frozen=True)
class Partition:
    """Flat clustering: labels[i] is the cluster id of series i."""

    k: int
    labels: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64).copy()
        check_positive_int(self.k, "k")
        if labels.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        used = np.unique(labels)
        if used.size != self.k or used[0] != 0 or used[-1] != self.k - 1:
            raise ValueError(f"labels must cover exactly [0, {self.k})")
        labels.flags.writeable = False
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.labels.size


@dataclass(frozen=True)
class PresenceMatrix:
    """Boolean occurrence of each vocabulary word in each document."""

    vocabulary: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[1] != len(self.vocabulary):
            raise ValueError("matrix shape does not match vocabulary")
        object.__setattr__(self, "matrix", matrix)


def presence_matrix(docs: list[SaxDocument]) -> PresenceMatrix:
    """Vocabulary (sorted union of words) and per-document presence rows."""
    if len(docs) < 2:
        raise ValueError("presence_matrix needs at least 2 documents")
    vocab = sorted({w for d in docs for w in d.words})
    if not vocab:
        raise ValueError("all documents are empty")
    index = {w: i for i, w in enumerate(vocab)}
    matrix = np.zeros((len(docs), len(vocab)), dtype=bool)
    for i, doc in enumerate(docs):
        for w in doc.words:
            matrix[i, index[w]] = True
    return PresenceMatrix(tuple(vocab), matrix)


# ---------------------------------------------------------------------------
# jitted kernels: SplitMix64 substreams, tree growth, pair accumulation
# ---------------------------------------------------------------------------


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


@njit(cache=True)
def _stream_seeds(base, count):
    out = np.empty(count, np.uint64)
    for t in range(count):
        out[t] = _mix64(base ^ _mix64(_U64(t + 1) * _GAMMA64))
    return out


@njit(cache=True)
def _grow_forest(pmT, seeds, ppc, max_attempts, depth_cap):
    """Leaf labels for every tree; leaves numbered in depth-first order,
    presence branch first."""
    V, n = pmT.shape
    T = seeds.shape[0]
    out = np.empty((T, n), np.int32)
    idx = np.empty(n, np.int64)
    buf = np.empty(n, np.int64)
    cap = 2 * n + 64
    slo = np.empty(cap, np.int64)
    shi = np.empty(cap, np.int64)
    sdp = np.empty(cap, np.int64)
    drawn = np.empty(ppc, np.int64)
    lim = (_SPAN32 // _U64(V)) * _U64(V)

    for t in range(T):
        state = seeds[t]
        for i in range(n):
            idx[i] = i
        slo[0] = 0
        shi[0] = n
        sdp[0] = 0
        top = 1
        leaf = 0
        while top > 0:
            top -= 1
            lo = slo[top]
            hi = shi[top]
            depth = sdp[top]
            size = hi - lo
            split_col = np.int64(-1)
            if size >= 2 and depth < depth_cap:
                attempts = 0
                while attempts < max_attempts and split_col < 0:
                    j = 0
                    while j < ppc:
                        r = _U64(0)
                        while True:
                            state = state + _GAMMA64
                            z = _mix64(state) & _MASK32
                            if z < lim:
                                r = z % _U64(V)
                                break
                        c = np.int64(r)
                        dup = False
                        for q in range(j):
                            if drawn[q] == c:
                                dup = True
                                break
                        if not dup:
                            drawn[j] = c
                            j += 1
                    for q in range(ppc):
                        c = drawn[q]
                        present = 0
                        for i in range(lo, hi):
                            present += pmT[c, idx[i]]
                        if 0 < present < size:
                            split_col = c
                            break
                    attempts += 1
            if split_col < 0:
                for i in range(lo, hi):
                    out[t, idx[i]] = leaf
                leaf += 1
            else:
                p = lo
                nb = 0
                for i in range(lo, hi):
                    v = idx[i]
                    if pmT[split_col, v] != 0:
                        idx[p] = v
                        p += 1
                    else:
                        buf[nb] = v
                        nb += 1
                for q in range(nb):
                    idx[p + q] = buf[q]
                slo[top] = p
                shi[top] = hi
                sdp[top] = depth + 1
                top += 1
                slo[top] = lo
                shi[top] = p
                sdp[top] = depth + 1
                top += 1
    return out


@njit(cache=True)
def _pair_counts(tree_labels):
    """Co-leaf pair counts over all trees (diagonal left at zero)."""
    T, n = tree_labels.shape
    counts = np.zeros((n, n), np.int64)
    order = np.empty(n, np.int64)
    start = np.empty(n + 1, np.int64)
    fill = np.empty(n, np.int64)
    for t in range(T):
        row = tree_labels[t]
        nleaf = 0
        for i in range(n):
            if row[i] + 1 > nleaf:
                nleaf = row[i] + 1
        for c in range(nleaf + 1):
            start[c] = 0
        for i in range(n):
            start[row[i] + 1] += 1
        for c in range(nleaf):
            start[c + 1] += start[c]
        for c in range(nleaf):
            fill[c] = start[c]
        for i in range(n):
            c = row[i]
            order[fill[c]] = i
            fill[c] += 1
        for c in range(nleaf):
            a0 = start[c]
            a1 = start[c + 1]
            for x in range(a0, a1):
                ix = order[x]
                for y in range(x + 1, a1):
                    counts[ix, order[y]] += 1
    for i in range(n):
        for j in range(i + 1, n):
            counts[j, i] = counts[i, j]
    return counts


# ---------------------------------------------------------------------------
# code-level plumbing shared with the selection sweep
# ---------------------------------------------------------------------------


def _presence_from_codes(code_docs: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Sorted vocabulary codes and the transposed uint8 presence matrix."""
    uniques = [np.unique(c) for c in code_docs]
    vocab = np.unique(np.concatenate(uniques)) if uniques else np.empty(0, np.int64)
    pmT = np.zeros((vocab.size, len(code_docs)), dtype=np.uint8)
    for i, u in enumerate(uniques):
        pmT[np.searchsorted(vocab, u), i] = 1
    return vocab, pmT


def _depth_cap(n: int) -> int:
    return math.ceil(math.log2(n)) + DEPTH_CAP_SLACK if n > 1 else DEPTH_CAP_SLACK


def _forest_labels(pmT: np.ndarray, params: SpfParams) -> np.ndarray:
    if pmT.shape[0] == 0:
        raise ValueError("all documents are empty")
    n = pmT.shape[1]
    seeds = _stream_seeds(_U64(params.rng_seed & 0xFFFFFFFFFFFFFFFF), params.ensemble_size)
    ppc = min(params.patterns_per_split, max(1, pmT.shape[0]))
    return _grow_forest(
        np.ascontiguousarray(pmT),
        seeds,
        ppc,
        MAX_SPLIT_ATTEMPTS,
        _depth_cap(n),
    )


def _coassociation(pmT: np.ndarray, params: SpfParams) -> np.ndarray:
    labels = _forest_labels(pmT, params)
    co = _pair_counts(labels).astype(np.float64)
    co /= params.ensemble_size
    np.fill_diagonal(co, 1.0)
    return co


@dataclass(frozen=True)
class _ConsensusModel:
    """Forest consensus shared across every k of one sweep cell."""

    n: int
    merges: np.ndarray = field(repr=False)
    co_association: np.ndarray = field(repr=False)

    def cut(self, k: int) -> Partition:
        labels = labels_at_k(self.merges, self.n, k)
        return Partition(k, labels)


def _consensus_model(code_docs: list[np.ndarray], params: SpfParams) -> _ConsensusModel:
    _, pmT = _presence_from_codes(code_docs)
    co = _coassociation(pmT, params)
    merges = average_linkage_merges(1.0 - co)
    return _ConsensusModel(len(code_docs), merges, co)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def grow_tree(pm: PresenceMatrix, params: SpfParams, stream_seed: int) -> Partition:
    """Grow one random pattern tree and return its leaf partition.

    `stream_seed` identifies the tree's substream. A drawn word column that
    does not separate the node (all present or all absent) is redrawn, up
    to 32 attempts; nodes of fewer than 2 series or at the depth cap
    (ceil(log2 n) + 4) become leaves.
    """
    pmT = np.ascontiguousarray(pm.matrix.T.astype(np.uint8))
    if pmT.shape[0] == 0:
        raise ValueError("all documents are empty")
    seeds = np.array([_U64(stream_seed & 0xFFFFFFFFFFFFFFFF)], dtype=np.uint64)
    ppc = min(params.patterns_per_split, max(1, pmT.shape[0]))
    labels = _grow_forest(pmT, seeds, ppc, MAX_SPLIT_ATTEMPTS, _depth_cap(pmT.shape[1]))[0]
    labels = labels.astype(np.int64)
    return Partition(int(labels.max()) + 1, labels)


def co_association(docs: list[SaxDocument], params: SpfParams) -> np.ndarray:
    """Fraction of trees placing each pair in the same leaf (diagonal 1)."""
    if len(docs) < 2:
        raise ValueError("co_association needs at least 2 documents")
    code_docs = sax.encode_documents(docs, params.sax)
    _, pmT = _presence_from_codes(code_docs)
    return _coassociation(pmT, params)


def spf_cluster(docs: list[SaxDocument], k: int, params: SpfParams) -> Partition:
    """Consensus-cluster SAX documents into exactly k groups.

    The ensemble's co-association matrix is agglomerated with average
    linkage on 1 - co_association and cut at k; cluster ids are assigned
    in order of first occurrence.
    """
    n = len(docs)
    check_positive_int(k, "k", minimum=2)
    if k > n:
        raise ValueError(f"k={k} exceeds number of series {n}")
    code_docs = sax.encode_documents(docs, params.sax)
    return _consensus_model(code_docs, params).cut(k)


class SymbolicPatternForest(BaseEstimator, ClusterMixin):
    """Cluster time series by symbolizing windows and ensembling random
    pattern trees.

    Parameters follow the library defaults: `ensemble_size` trees, one
    pattern draw per split, and consensus by average-linkage on the
    co-association matrix.

    Attributes (after fit)
    ----------------------
    labels_ : ndarray of shape (n_series,)
    co_association_ : ndarray of shape (n_series, n_series)
    """

    def __init__(
        self,
        n_clusters: int = 2,
        window_length: int = 10,
        word_length: int = 5,
        alphabet_size: int = 4,
        ensemble_size: int = 100,
        patterns_per_split: int = 1,
        random_state: int = 0,
    ):
        self.n_clusters = n_clusters
        self.window_length = window_length
        self.word_length = word_length
        self.alphabet_size = alphabet_size
        self.ensemble_size = ensemble_size
        self.patterns_per_split = patterns_per_split
        self.random_state = random_state

    def _params(self) -> SpfParams:
        return SpfParams(
            sax=SaxParams(self.window_length, self.word_length, self.alphabet_size),
            ensemble_size=self.ensemble_size,
            patterns_per_split=self.patterns_per_split,
            rng_seed=self.random_state,
        )

    def fit(self, X, y=None):
        series = as_series_list(X)
        params = self._params()
        n = len(series)
        check_positive_int(self.n_clusters, "n_clusters", minimum=2)
        if self.n_clusters > n:
            raise ValueError(f"n_clusters={self.n_clusters} exceeds number of series {n}")
        shortest = min(len(s) for s in series)
        if params.sax.window_length > shortest:
            raise ValueError(
                f"window_length {params.sax.window_length} exceeds shortest series {shortest}"
            )
        code_docs = sax.dataset_codes(series, params.sax)
        model = _consensus_model(code_docs, params)
        partition = model.cut(self.n_clusters)
        self.labels_ = partition.labels
        self.co_association_ = model.co_association
        self.n_features_in_ = shortest
        return self
