"""Input validation helpers shared by the estimators and the functional API."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


def as_float_vector(values, name: str = "values") -> np.ndarray:
    """Coerce to a 1-D float64 array and require every entry to be finite."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def as_series_list(X) -> list[np.ndarray]:
    """Normalize estimator input to a list of 1-D float64 arrays.

    Accepts a 2-D array (one row per series) or an iterable of 1-D
    sequences, possibly of varying lengths.
    """
    if isinstance(X, np.ndarray) and X.ndim == 2:
        return [as_float_vector(row, f"series {i}") for i, row in enumerate(X)]
    if isinstance(X, np.ndarray) and X.ndim != 1:
        raise ValueError(f"expected a 2-D array or a sequence of 1-D series, got shape {X.shape}")
    if not isinstance(X, Iterable):
        raise TypeError("X must be a 2-D array or an iterable of 1-D series")
    series = [as_float_vector(row, f"series {i}") for i, row in enumerate(X)]
    if not series:
        raise ValueError("X contains no series")
    return series


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_fraction(value, name: str, *, low: float = 0.0, high: float = 1.0) -> float:
    value = float(value)
    if not np.isfinite(value) or not (low <= value <= high):
        raise ValueError(f"{name} must lie in [{low}, {high}], got {value}")
    return value


def check_equal_lengths(series: Sequence[np.ndarray], context: str) -> int:
    """Return the shared length, or raise if the series are ragged."""
    lengths = {len(s) for s in series}
    if len(lengths) != 1:
        raise ValueError(f"{context} requires equal lengths")
    return lengths.pop()
