"""Cluster-count selection: sweep candidate k and SAX grids, score with the
silhouette, and pick the argmax.

Raw mode scores partitions on z-normalized series vectors (the clustering
itself still runs on SAX documents); bow and tfidf modes score on their
feature matrices. Sweeps are deterministic: cells are visited in a fixed
order and exact silhouette ties fall toward smaller k, then smaller window,
alphabet, and filter bounds.
"""

from __future__ import annotations

import dataclasses
import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from . import sax
from ._validation import as_series_list, check_positive_int
from .dataset import Dataset, DatasetError, znormalize
from .forest import Partition, SpfParams, _consensus_model
from .sax import SaxParams
from .validity import _euclidean_from_csr, euclidean_distances, silhouette
from .vectorize import FrequencyFilter, _counts_csr, _tfidf_csr

MODES = ("raw", "bow", "tfidf")

DEFAULT_K_MIN = 2
DEFAULT_K_MAX = 10
DEFAULT_WORD_LENGTH = 5
DEFAULT_WINDOW_LENGTHS = (3, 5, 8, 10, 12, 20, 30, 40, 50, 100, 200, 350)
DEFAULT_ALPHABET_SIZES = (3, 4, 5, 6, 8, 9, 10, 20)
DEFAULT_FREQ_FILTERS = (
    FrequencyFilter(0.001, 0.99),
    FrequencyFilter(0.01, 0.9),
    FrequencyFilter(0.01, 0.99),
    FrequencyFilter(0.1, 0.9),
)

VERDICT_CORRECT = "Correct"
VERDICT_CLOSE = "Close"
VERDICT_WRONG = "Wrong"


@dataclass(frozen=True)
class SweepGrid:
    """The cell space of one selection sweep."""

    mode: str
    k_min: int = DEFAULT_K_MIN
    k_max: int = DEFAULT_K_MAX
    window_lengths: tuple[int, ...] = DEFAULT_WINDOW_LENGTHS
    alphabet_sizes: tuple[int, ...] = DEFAULT_ALPHABET_SIZES
    word_length: int = DEFAULT_WORD_LENGTH
    freq_filters: tuple[FrequencyFilter, ...] = DEFAULT_FREQ_FILTERS

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        check_positive_int(self.k_min, "k_min", minimum=2)
        check_positive_int(self.k_max, "k_max", minimum=self.k_min)
        check_positive_int(self.word_length, "word_length")
        if not self.window_lengths:
            raise ValueError("window_lengths is empty")
        if not self.alphabet_sizes:
            raise ValueError("alphabet_sizes is empty")
        object.__setattr__(self, "window_lengths", tuple(int(w) for w in self.window_lengths))
        object.__setattr__(self, "alphabet_sizes", tuple(int(a) for a in self.alphabet_sizes))
        for w in self.window_lengths:
            check_positive_int(w, "window length")
        for a in self.alphabet_sizes:
            check_positive_int(a, "alphabet size", minimum=2)
            if a > sax.MAX_ALPHABET:
                raise ValueError(f"alphabet size {a} exceeds {sax.MAX_ALPHABET}")
        filters = tuple(
            f if isinstance(f, FrequencyFilter) else FrequencyFilter(*f)
            for f in self.freq_filters
        )
        object.__setattr__(self, "freq_filters", filters)
        if self.mode == "tfidf" and not filters:
            raise ValueError("tfidf mode needs at least one frequency filter")


@dataclass(frozen=True)
class SweepCell:
    """One scored (params, k) point of the sweep."""

    k: int
    window_length: int
    alphabet_size: int
    word_length: int
    min_freq: float | None
    max_freq: float | None
    silhouette: float
    partition: Partition = field(repr=False)

    def _tie_key(self):
        return (
            self.k,
            self.window_length,
            self.alphabet_size,
            -1.0 if self.min_freq is None else self.min_freq,
            -1.0 if self.max_freq is None else self.max_freq,
        )


@dataclass(frozen=True)
class SelectionReport:
    """Everything one sweep produced, plus the argmax and its provenance."""

    dataset: str
    mode: str
    grid: SweepGrid
    cells: tuple[SweepCell, ...]
    best: SweepCell
    predicted_k: int
    true_k: int | None = None

    @property
    def verdict(self) -> str:
        if self.true_k is None:
            return "n/a"
        return verdict(self.predicted_k, self.true_k)


def verdict(predicted_k: int, actual_k: int) -> str:
    """Correct on equality, Close when one apart, Wrong otherwise."""
    check_positive_int(predicted_k, "predicted_k", minimum=2)
    check_positive_int(actual_k, "actual_k", minimum=2)
    diff = abs(predicted_k - actual_k)
    if diff == 0:
        return VERDICT_CORRECT
    if diff == 1:
        return VERDICT_CLOSE
    return VERDICT_WRONG


def summarize(verdicts) -> dict[str, float]:
    """Percentage of Correct/Close/Wrong verdicts (sums to 100)."""
    verdicts = list(verdicts)
    if not verdicts:
        raise ValueError("no verdicts to summarize")
    allowed = (VERDICT_CORRECT, VERDICT_CLOSE, VERDICT_WRONG)
    for v in verdicts:
        if v not in allowed:
            raise ValueError(f"unknown verdict {v!r}")
    n = len(verdicts)
    return {
        "correct_pct": verdicts.count(VERDICT_CORRECT) / n * 100.0,
        "close_pct": verdicts.count(VERDICT_CLOSE) / n * 100.0,
        "wrong_pct": verdicts.count(VERDICT_WRONG) / n * 100.0,
    }


def _pick_best(cells: list[SweepCell]) -> SweepCell:
    best = cells[0]
    best_key = best._tie_key()
    for cell in cells[1:]:
        key = cell._tie_key()
        if cell.silhouette > best.silhouette or (
            cell.silhouette == best.silhouette and key < best_key
        ):
            best, best_key = cell, key
    return best


def _sweep_modes(
    dataset: Dataset, grid: SweepGrid, spf: SpfParams, modes: tuple[str, ...]
) -> dict[str, SelectionReport]:
    """Run one grid for several modes at once, sharing the per-cell forests."""
    n = len(dataset)
    if n < 2:
        raise DatasetError(f"dataset {dataset.name!r} has fewer than 2 series")
    if grid.k_max > n:
        raise ValueError(f"k_max {grid.k_max} exceeds dataset size {n}")
    ks = range(grid.k_min, grid.k_max + 1)
    shortest = dataset.min_length

    raw_dm = None
    if "raw" in modes:
        lengths = {len(s) for s in dataset.series}
        if len(lengths) != 1:
            raise DatasetError("raw mode requires equal lengths")
        raw_rows = np.vstack([znormalize(s.values) for s in dataset.series])
        raw_dm = euclidean_distances(raw_rows)

    cells: dict[str, list[SweepCell]] = {m: [] for m in modes}
    for window in sorted(set(grid.window_lengths)):
        if window > shortest:
            warnings.warn(
                f"window {window} exceeds shortest series length {shortest}; skipped",
                stacklevel=2,
            )
            continue
        word = min(grid.word_length, window)
        for alphabet in sorted(set(grid.alphabet_sizes)):
            combo = SaxParams(window, word, alphabet)
            code_docs = sax.dataset_codes(dataset.series, combo)
            params = dataclasses.replace(spf, sax=combo)
            model = _consensus_model(code_docs, params)
            partitions = {k: model.cut(k) for k in ks}
            counts = None
            if "bow" in modes or "tfidf" in modes:
                _, counts = _counts_csr(code_docs)
            for mode in modes:
                if mode == "raw":
                    scored = [(None, raw_dm)]
                elif mode == "bow":
                    scored = [(None, _euclidean_from_csr(counts))]
                else:
                    doc_lengths = np.array([c.size for c in code_docs], dtype=np.int64)
                    scored = []
                    for flt in grid.freq_filters:
                        try:
                            X = _tfidf_csr(counts, doc_lengths, flt)
                        except ValueError as exc:
                            warnings.warn(
                                f"window {window} alphabet {alphabet}: {exc}; cell skipped",
                                stacklevel=2,
                            )
                            continue
                        scored.append((flt, _euclidean_from_csr(X)))
                for flt, dm in scored:
                    for k in ks:
                        cells[mode].append(
                            SweepCell(
                                k=k,
                                window_length=window,
                                alphabet_size=alphabet,
                                word_length=word,
                                min_freq=None if flt is None else flt.min_freq,
                                max_freq=None if flt is None else flt.max_freq,
                                silhouette=silhouette(dm, partitions[k]).mean,
                                partition=partitions[k],
                            )
                        )

    reports = {}
    for mode in modes:
        if not cells[mode]:
            raise ValueError(f"{dataset.name}: every {mode} sweep cell was skipped")
        best = _pick_best(cells[mode])
        reports[mode] = SelectionReport(
            dataset=dataset.name,
            mode=mode,
            grid=dataclasses.replace(grid, mode=mode),
            cells=tuple(cells[mode]),
            best=best,
            predicted_k=best.k,
            true_k=dataset.true_k,
        )
    return reports


def sweep_params(
    grid: SweepGrid,
    ensemble_size: int = 100,
    patterns_per_split: int = 1,
    seed: int = 0,
) -> SpfParams:
    """Forest parameters for a sweep; the SAX part is a placeholder that
    `run_sweep` replaces cell by cell."""
    smallest = min(grid.window_lengths)
    return SpfParams(
        sax=SaxParams(smallest, min(grid.word_length, smallest)),
        ensemble_size=ensemble_size,
        patterns_per_split=patterns_per_split,
        rng_seed=seed,
    )


def run_sweep(dataset: Dataset, grid: SweepGrid, spf: SpfParams) -> SelectionReport:
    """Score every legal grid cell and return the report with the argmax k.

    The SAX parameters inside `spf` are replaced per cell; its ensemble
    size, split arity, and seed apply throughout. Windows longer than the
    shortest series and filters that empty the vocabulary are skipped with
    warnings.
    """
    return _sweep_modes(dataset, grid, spf, (grid.mode,))[grid.mode]


def run_benchmark_modes(
    dataset: Dataset, grid: SweepGrid, spf: SpfParams
) -> dict[str, SelectionReport | None]:
    """Raw + bow sweeps on one grid (sharing forests), then tfidf restricted
    to the bow-optimal window and alphabet, sweeping only the filters.

    Raw mode is None for variable-length datasets (with a warning).
    """
    try:
        reports = dict(_sweep_modes(dataset, grid, spf, ("raw", "bow")))
    except DatasetError as exc:
        if "equal lengths" not in str(exc):
            raise
        warnings.warn(f"{dataset.name}: {exc}; raw mode skipped", stacklevel=2)
        reports = {"raw": None, **_sweep_modes(dataset, grid, spf, ("bow",))}
    bow = reports["bow"]
    tfidf_grid = dataclasses.replace(
        grid,
        mode="tfidf",
        window_lengths=(bow.best.window_length,),
        alphabet_sizes=(bow.best.alphabet_size,),
    )
    reports["tfidf"] = run_sweep(dataset, tfidf_grid, spf)
    return reports


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _cell_payload(cell: SweepCell, with_labels: bool = False) -> dict:
    payload = {
        "k": cell.k,
        "window_length": cell.window_length,
        "alphabet_size": cell.alphabet_size,
        "word_length": cell.word_length,
        "min_freq": cell.min_freq,
        "max_freq": cell.max_freq,
        "silhouette": cell.silhouette,
    }
    if with_labels:
        payload["labels"] = [int(v) for v in cell.partition.labels]
    return payload


def report_to_json(report: SelectionReport) -> str:
    """Canonical JSON for a report; byte-stable for fixed inputs and seed."""
    grid = report.grid
    payload = {
        "dataset": report.dataset,
        "mode": report.mode,
        "grid": {
            "mode": grid.mode,
            "k_min": grid.k_min,
            "k_max": grid.k_max,
            "window_lengths": list(grid.window_lengths),
            "alphabet_sizes": list(grid.alphabet_sizes),
            "word_length": grid.word_length,
            "freq_filters": (
                [[f.min_freq, f.max_freq] for f in grid.freq_filters]
                if grid.mode == "tfidf"
                else None
            ),
        },
        "cells": [_cell_payload(c) for c in report.cells],
        "best": _cell_payload(report.best, with_labels=True),
        "predicted_k": report.predicted_k,
        "verdict": report.verdict,
    }
    return json.dumps(payload, indent=2) + "\n"


def report_to_csv(report: SelectionReport) -> str:
    """One-row CSV projection in the benchmark tables' column order."""
    actual = "" if report.true_k is None else str(report.true_k)
    best = report.best
    if report.mode == "raw":
        header = "dataset,actual_k,predicted_k,verdict"
        row = f"{report.dataset},{actual},{report.predicted_k},{report.verdict}"
    elif report.mode == "bow":
        header = "dataset,window_length,alphabet_size,actual_k,predicted_k,verdict"
        row = (
            f"{report.dataset},{best.window_length},{best.alphabet_size},"
            f"{actual},{report.predicted_k},{report.verdict}"
        )
    else:
        header = (
            "dataset,window_length,alphabet_size,min_freq,max_freq,"
            "actual_k,predicted_k,verdict"
        )
        row = (
            f"{report.dataset},{best.window_length},{best.alphabet_size},"
            f"{best.min_freq},{best.max_freq},{actual},{report.predicted_k},{report.verdict}"
        )
    return header + "\n" + row + "\n"


# ---------------------------------------------------------------------------
# estimator
# ---------------------------------------------------------------------------


class ClusterCountSelector(BaseEstimator):
    """Estimate how many clusters a set of series contains.

    Sweeps the (window, alphabet) grid and candidate k, clustering with a
    symbolic pattern forest and scoring with the silhouette in the chosen
    feature space ('bow', 'tfidf', or 'raw').

    Attributes (after fit)
    ----------------------
    best_k_ : int
    best_silhouette_ : float
    report_ : SelectionReport
    """

    def __init__(
        self,
        mode: str = "bow",
        k_min: int = DEFAULT_K_MIN,
        k_max: int = DEFAULT_K_MAX,
        window_lengths=None,
        alphabet_sizes=None,
        word_length: int = DEFAULT_WORD_LENGTH,
        freq_filters=None,
        ensemble_size: int = 100,
        patterns_per_split: int = 1,
        random_state: int = 0,
    ):
        self.mode = mode
        self.k_min = k_min
        self.k_max = k_max
        self.window_lengths = window_lengths
        self.alphabet_sizes = alphabet_sizes
        self.word_length = word_length
        self.freq_filters = freq_filters
        self.ensemble_size = ensemble_size
        self.patterns_per_split = patterns_per_split
        self.random_state = random_state

    def fit(self, X, y=None):
        series = as_series_list(X)
        labels = None if y is None else [int(v) for v in y]
        dataset = Dataset.from_arrays("fit", series, labels)
        grid = SweepGrid(
            mode=self.mode,
            k_min=self.k_min,
            k_max=self.k_max,
            window_lengths=(
                tuple(self.window_lengths)
                if self.window_lengths is not None
                else DEFAULT_WINDOW_LENGTHS
            ),
            alphabet_sizes=(
                tuple(self.alphabet_sizes)
                if self.alphabet_sizes is not None
                else DEFAULT_ALPHABET_SIZES
            ),
            word_length=self.word_length,
            freq_filters=(
                tuple(self.freq_filters)
                if self.freq_filters is not None
                else DEFAULT_FREQ_FILTERS
            ),
        )
        spf = sweep_params(
            grid,
            ensemble_size=self.ensemble_size,
            patterns_per_split=self.patterns_per_split,
            seed=self.random_state,
        )
        self.report_ = run_sweep(dataset, grid, spf)
        self.best_k_ = self.report_.predicted_k
        self.best_silhouette_ = self.report_.best.silhouette
        self.labels_ = self.report_.best.partition.labels
        return self
