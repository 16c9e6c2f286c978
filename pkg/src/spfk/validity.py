"""Euclidean distances and the silhouette coefficient."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist


@dataclass(frozen=True)
class SilhouetteReport:
    """Per-point silhouettes and their mean."""

    per_point: np.ndarray
    mean: float


def euclidean_distances(rows) -> np.ndarray:
    """Pairwise Euclidean distances between feature rows.

    Returns a symmetric matrix with a zero diagonal. Rows must share one
    dimension; ragged input is rejected.
    """
    try:
        arr = np.asarray(rows, dtype=np.float64)
    except ValueError as exc:
        raise ValueError(f"rows have mismatched dimensions: {exc}") from None
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix of feature rows, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("rows contain NaN or Inf")
    dm = cdist(arr, arr)
    np.fill_diagonal(dm, 0.0)
    return dm


def _euclidean_from_csr(X) -> np.ndarray:
    """Distances straight from a sparse matrix via the gram expansion."""
    sq = np.asarray(X.multiply(X).sum(axis=1)).ravel()
    gram = (X @ X.T).toarray()
    d2 = sq[:, None] + sq[None, :] - 2.0 * gram
    np.maximum(d2, 0.0, out=d2)
    np.fill_diagonal(d2, 0.0)
    return np.sqrt(d2)


def silhouette(distances, partition) -> SilhouetteReport:
    """Silhouette coefficient of a flat clustering under a distance matrix.

    For each point, a is the mean distance to its own cluster's other
    members and b the smallest mean distance to any other cluster; the
    silhouette is (b - a) / max(a, b). Points in singleton clusters score
    0, as do points where both means vanish.
    """
    labels = np.asarray(getattr(partition, "labels", partition), dtype=np.int64)
    dm = np.asarray(distances, dtype=np.float64)
    n = labels.size
    if dm.shape != (n, n):
        raise ValueError(f"distance matrix shape {dm.shape} does not match {n} labels")
    if n == 0:
        raise ValueError("silhouette undefined: empty clustering")
    k = int(labels.max()) + 1 if n else 0
    used = np.unique(labels)
    if used[0] < 0 or used.size != k or used[-1] != k - 1:
        raise ValueError(f"labels must cover exactly [0, {k})")
    if k < 2:
        raise ValueError("silhouette undefined for fewer than 2 clusters")

    counts = np.bincount(labels, minlength=k)
    order = np.argsort(labels, kind="stable")
    bounds = np.zeros(k, dtype=np.int64)
    bounds[1:] = np.cumsum(counts)[:-1]
    cluster_sums = np.add.reduceat(dm[:, order], bounds, axis=1)

    own = labels
    own_sizes = counts[own]
    mean_to = cluster_sums / counts[None, :]
    a = np.zeros(n, dtype=np.float64)
    multi = own_sizes > 1
    own_sums = np.take_along_axis(cluster_sums, own[:, None], axis=1).ravel()
    a[multi] = own_sums[multi] / (own_sizes[multi] - 1)

    masked = mean_to.copy()
    masked[np.arange(n), own] = np.inf
    b = masked.min(axis=1)

    denom = np.maximum(a, b)
    s = np.zeros(n, dtype=np.float64)
    ok = multi & (denom > 0.0)
    s[ok] = (b[ok] - a[ok]) / denom[ok]
    return SilhouetteReport(s, float(s.mean()))
