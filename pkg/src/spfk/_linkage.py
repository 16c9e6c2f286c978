"""Deterministic average-linkage agglomeration for consensus clustering.

Clusters are indexed by their smallest member; a merge keeps the smaller
index. Equal-dissimilarity candidates are resolved toward the smallest
(i, j) pair, so the merge sequence is a pure function of the input matrix.

The jitted merge loop and `_merges_reference` perform the same float
operations in the same order; the reference stays around as the oracle
for equivalence tests.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _merge_loop(D):
    n = D.shape[0]
    INF = np.inf
    for i in range(n):
        D[i, i] = INF
    size = np.ones(n, np.float64)
    nn_dist = np.empty(n, np.float64)
    nn_idx = np.empty(n, np.int64)
    for i in range(n):
        best = INF
        bj = 0
        for j in range(n):
            if D[i, j] < best:
                best = D[i, j]
                bj = j
        nn_dist[i] = best
        nn_idx[i] = bj
    # Sorted packed list of live clusters; scans over it visit columns in
    # index order, which keeps first-minimum tie handling exact while the
    # scans shrink as clusters disappear.
    alive = np.arange(n, dtype=np.int64)
    n_alive = n
    merges = np.empty((n - 1, 2), np.int64)

    for step in range(n - 1):
        a = alive[0]
        best = nn_dist[a]
        for p in range(1, n_alive):
            i = alive[p]
            if nn_dist[i] < best:
                best = nn_dist[i]
                a = i
        b = nn_idx[a]
        if b < a:
            a, b = b, a
        merges[step, 0] = a
        merges[step, 1] = b

        sa = size[a]
        sb = size[b]
        s = sa + sb
        for p in range(n_alive):
            j = alive[p]
            if j != a and j != b:
                v = (sa * D[a, j] + sb * D[b, j]) / s
                D[a, j] = v
                D[j, a] = v
        D[a, a] = INF
        D[a, b] = INF
        D[b, a] = INF
        size[a] = s
        nn_dist[b] = INF
        nn_idx[b] = b
        pos = 0
        while alive[pos] != b:
            pos += 1
        for p in range(pos, n_alive - 1):
            alive[p] = alive[p + 1]
        n_alive -= 1

        for p in range(n_alive):
            i = alive[p]
            if i != a and (nn_idx[i] == a or nn_idx[i] == b):
                # The merged column is the only one that moved, and entries
                # never drop below the cached row minimum. When it still
                # equals that minimum, no column left of `a` can tie it
                # (it would have been the cached neighbor instead), so the
                # cache stays exact without a rescan.
                if D[i, a] == nn_dist[i]:
                    nn_idx[i] = a
                    continue
            elif i != a:
                v = D[i, a]
                if v < nn_dist[i]:
                    nn_dist[i] = v
                    nn_idx[i] = a
                elif v == nn_dist[i] and a < nn_idx[i]:
                    nn_idx[i] = a
                continue
            bd = INF
            bj = i
            for q in range(n_alive):
                j = alive[q]
                v = D[i, j]
                if v < bd:
                    bd = v
                    bj = j
            nn_dist[i] = bd
            nn_idx[i] = bj

    return merges


def average_linkage_merges(dissimilarity: np.ndarray) -> np.ndarray:
    """Full merge sequence (n - 1 rows of cluster indices, smaller first).

    Uses Lance-Williams averaging with per-row nearest-neighbor caching:
    only rows whose cached neighbor was consumed get rescanned.
    """
    D = np.array(dissimilarity, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError(f"dissimilarity must be square, got shape {D.shape}")
    if D.shape[0] < 2:
        return np.empty((0, 2), dtype=np.int64)
    return _merge_loop(D)


def _merges_reference(dissimilarity: np.ndarray) -> np.ndarray:
    """Pure-numpy twin of `_merge_loop`, kept as the equivalence oracle."""
    D = np.array(dissimilarity, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError(f"dissimilarity must be square, got shape {D.shape}")
    n = D.shape[0]
    if n < 2:
        return np.empty((0, 2), dtype=np.int64)
    np.fill_diagonal(D, np.inf)

    size = np.ones(n, dtype=np.float64)
    active = np.ones(n, dtype=bool)
    nn_dist = D.min(axis=1)
    nn_idx = D.argmin(axis=1).astype(np.int64)
    merges = np.empty((n - 1, 2), dtype=np.int64)

    for step in range(n - 1):
        a = int(np.argmin(nn_dist))
        b = int(nn_idx[a])
        if b < a:
            a, b = b, a
        merges[step, 0] = a
        merges[step, 1] = b

        sa, sb = size[a], size[b]
        row = (sa * D[a] + sb * D[b]) / (sa + sb)
        row[a] = np.inf
        row[b] = np.inf
        D[a] = row
        D[:, a] = row
        D[b] = np.inf
        D[:, b] = np.inf
        size[a] = sa + sb
        active[b] = False
        nn_dist[b] = np.inf
        nn_idx[b] = b

        stale = active & ((nn_idx == a) | (nn_idx == b))
        stale[a] = active[a]
        for i in np.nonzero(stale)[0]:
            nn_dist[i] = D[i].min()
            nn_idx[i] = int(D[i].argmin())

        col = D[:, a]
        fresh = active & ~stale
        better = fresh & (col < nn_dist)
        nn_dist[better] = col[better]
        nn_idx[better] = a
        tie = fresh & (col == nn_dist) & (a < nn_idx)
        nn_idx[tie] = a

    return merges


def labels_at_k(merges: np.ndarray, n: int, k: int) -> np.ndarray:
    """Flat labels after replaying the first n - k merges.

    Labels are renumbered 0..k-1 in order of each cluster's first
    occurrence along the original index order.
    """
    if not (1 <= k <= n):
        raise ValueError(f"k={k} outside [1, {n}]")
    parent = np.arange(n, dtype=np.int64)
    for a, b in merges[: n - k]:
        parent[b] = a
    for i in range(n):
        parent[i] = parent[parent[i]]
    roots = np.unique(parent)
    return np.searchsorted(roots, parent).astype(np.int64)
