"""Time-series containers, UCR-format ingestion, and normalization primitives."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from ._validation import as_float_vector, check_positive_int

DEFAULT_EPSILON = 1e-8

_LABEL_TOL = 1e-9


class DatasetError(ValueError):
    """Raised for unreadable, malformed, or mode-incompatible input data."""


@dataclass(frozen=True)
class TimeSeries:
    """A single labeled (or unlabeled) real-valued sequence.

    Parameters
    ----------
    id : str
        Opaque identifier, unique within a dataset.
    values : ndarray
        Ordered real values, length >= 2, finite.
    label : int or None
        Integer class id when ground truth is known. Labels are metadata:
        nothing outside evaluation reads them.
    """

    id: str
    values: np.ndarray
    label: int | None = None

    def __post_init__(self):
        values = as_float_vector(self.values, f"series {self.id!r}")
        if values.size < 2:
            raise ValueError(f"series {self.id!r} has fewer than 2 values")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of series with optional ground-truth class count."""

    name: str
    series: tuple[TimeSeries, ...]
    true_k: int | None = field(default=None)

    def __post_init__(self):
        series = tuple(self.series)
        if not series:
            raise DatasetError(f"dataset {self.name!r}: no series")
        ids = [s.id for s in series]
        if len(set(ids)) != len(ids):
            raise ValueError(f"dataset {self.name!r}: duplicate series ids")
        object.__setattr__(self, "series", series)
        if self.true_k is None:
            labels = {s.label for s in series}
            if None not in labels and len(labels) >= 2:
                object.__setattr__(self, "true_k", len(labels))
        if self.true_k is not None and not (2 <= self.true_k <= len(series)):
            raise ValueError(
                f"dataset {self.name!r}: true_k={self.true_k} outside [2, {len(series)}]"
            )

    def __len__(self) -> int:
        return len(self.series)

    @property
    def min_length(self) -> int:
        return min(len(s) for s in self.series)

    @classmethod
    def from_arrays(cls, name: str, X, labels=None) -> "Dataset":
        """Build a dataset from a 2-D array or an iterable of 1-D sequences."""
        from ._validation import as_series_list

        rows = as_series_list(X)
        if labels is not None and len(labels) != len(rows):
            raise ValueError("labels length does not match number of series")
        series = tuple(
            TimeSeries(str(i), row, None if labels is None else int(labels[i]))
            for i, row in enumerate(rows)
        )
        return cls(name, series)


def _parse_label(token: str, row: int) -> int:
    try:
        raw = float(token)
    except ValueError:
        raise DatasetError(f"row {row}: non-numeric label {token!r}") from None
    rounded = round(raw)
    if abs(raw - rounded) > _LABEL_TOL:
        raise DatasetError(f"row {row}: label {token!r} is not integer-valued")
    return int(rounded)


def _detect_delimiter(lines: list[str]) -> str:
    for line in lines:
        if line.strip():
            return "\t" if "\t" in line else ","
    return "\t"


def load_ucr(path, delimiter: str | None = None) -> Dataset:
    """Load a UCR-format file: one series per line, label first.

    Parameters
    ----------
    path : str or Path
        File with rows ``label <delim> v1 <delim> v2 ...``. Tab and comma
        delimiters are auto-detected (tab tried first) unless `delimiter`
        is given. Rows may have differing lengths; trailing empty fields
        are ignored.

    Returns
    -------
    Dataset
        Series ids are row indices; `true_k` is the distinct label count
        when it is at least 2.
    """
    try:
        with open(path, "r", encoding="utf-8", newline=None) as fh:
            text = fh.read()
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc

    lines = text.splitlines()
    if delimiter is None:
        delimiter = _detect_delimiter(lines)

    series: list[TimeSeries] = []
    for row, line in enumerate(lines):
        if not line.strip():
            continue
        fields = line.split(delimiter)
        while fields and fields[-1].strip() == "":
            fields.pop()
        if len(fields) < 3:
            raise DatasetError(f"row {row}: fewer than 2 numeric values")
        label = _parse_label(fields[0].strip(), row)
        values = np.empty(len(fields) - 1, dtype=np.float64)
        for j, token in enumerate(fields[1:]):
            try:
                values[j] = float(token)
            except ValueError:
                raise DatasetError(f"row {row}: non-numeric token {token.strip()!r}") from None
        if not np.all(np.isfinite(values)):
            raise DatasetError(f"row {row}: NaN or Inf value rejected")
        series.append(TimeSeries(str(row), values, label))

    if not series:
        raise DatasetError(f"{path}: no series")
    name = os.path.splitext(os.path.basename(str(path)))[0]
    return Dataset(name, tuple(series))


def save_ucr(dataset: Dataset, path, delimiter: str = "\t") -> None:
    """Write a dataset back to UCR format (labels default to 0 when absent)."""
    with open(path, "w", encoding="utf-8") as fh:
        for s in dataset.series:
            label = 0 if s.label is None else s.label
            fh.write(delimiter.join([str(label)] + [repr(float(v)) for v in s.values]))
            fh.write("\n")


def znormalize(values, epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    """Center to mean 0 and scale to unit population standard deviation.

    Near-constant input (sigma <= epsilon) maps to all zeros instead of
    exploding, so flat subsequences stay well-defined downstream.
    """
    arr = as_float_vector(values)
    if arr.size == 0:
        return arr.copy()
    sigma = float(arr.std())
    if sigma <= epsilon:
        return np.zeros_like(arr)
    return (arr - arr.mean()) / sigma


@dataclass(frozen=True)
class Subsequence:
    """A contiguous window of a source series."""

    source_id: str
    start: int
    values: np.ndarray

    def __len__(self) -> int:
        return self.values.size


def subsequences(series: TimeSeries, window_length: int) -> list[Subsequence]:
    """All contiguous windows of the given length, in order of start offset.

    A series of length m yields exactly m - window_length + 1 windows.
    """
    check_positive_int(window_length, "window_length")
    m = len(series)
    if window_length > m:
        raise ValueError(f"window_length {window_length} exceeds series length {m}")
    return [
        Subsequence(series.id, start, series.values[start : start + window_length])
        for start in range(m - window_length + 1)
    ]
