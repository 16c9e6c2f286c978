"""Symbolic aggregate approximation: breakpoints, PAA, words, documents.

Each sliding window is z-normalized, reduced to `word_length` segment means
(with fractional point mass when the window length is not divisible), and
quantized against equiprobable standard-normal breakpoints into letters
'a', 'b', ... . Every window keeps its word: consecutive duplicates are not
collapsed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.stats import norm

from ._validation import as_float_vector, check_positive_int
from .dataset import DEFAULT_EPSILON, Subsequence, TimeSeries

MAX_ALPHABET = 26

# Largest letter-batch materialized at once by the dataset encoder (floats).
_CHUNK_BUDGET = 8_000_000


@dataclass(frozen=True)
class SaxParams:
    """Symbolization parameters.

    Parameters
    ----------
    window_length : int
        Sliding-window length, at least `word_length`.
    word_length : int
        Segments per word (PAA size), default 5.
    alphabet_size : int
        Distinct letters, between 2 and 26.
    """

    window_length: int
    word_length: int = 5
    alphabet_size: int = 4

    def __post_init__(self):
        check_positive_int(self.window_length, "window_length")
        check_positive_int(self.word_length, "word_length")
        check_positive_int(self.alphabet_size, "alphabet_size", minimum=2)
        if self.alphabet_size > MAX_ALPHABET:
            raise ValueError(f"alphabet_size must be <= {MAX_ALPHABET}, got {self.alphabet_size}")
        if self.word_length > self.window_length:
            raise ValueError(
                f"word_length {self.word_length} exceeds window_length {self.window_length}"
            )


@dataclass(frozen=True)
class SaxDocument:
    """The ordered SAX words of one series under fixed parameters."""

    source_id: str
    words: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.words)


@lru_cache(maxsize=64)
def _breakpoints_cached(alphabet_size: int) -> np.ndarray:
    qs = np.arange(1, alphabet_size) / alphabet_size
    beta = norm.ppf(qs)
    beta.flags.writeable = False
    return beta


def breakpoints(alphabet_size: int) -> np.ndarray:
    """Equiprobable standard-normal quantiles splitting N(0,1) into
    `alphabet_size` regions; returns the alphabet_size - 1 interior cuts.
    """
    check_positive_int(alphabet_size, "alphabet_size", minimum=2)
    if alphabet_size > MAX_ALPHABET:
        raise ValueError(f"alphabet_size must be <= {MAX_ALPHABET}")
    return _breakpoints_cached(int(alphabet_size))


@lru_cache(maxsize=256)
def _paa_segments(window_length: int, word_length: int):
    """Per-segment (start, stop, weights) with exact integer overlap mass.

    Positions are scaled by word_length so both point and segment boundaries
    are integers: point i covers [i*w, (i+1)*w), segment j covers
    [j*l, (j+1)*l). Weights divide by l, the scaled mass of one segment.
    """
    l, w = window_length, word_length
    segments = []
    for j in range(w):
        lo, hi = j * l, (j + 1) * l
        start = lo // w
        stop = -(-hi // w)  # ceil
        overlap = np.empty(stop - start, dtype=np.float64)
        for idx, i in enumerate(range(start, stop)):
            overlap[idx] = min(hi, (i + 1) * w) - max(lo, i * w)
        weights = overlap / l
        weights.flags.writeable = False
        segments.append((start, stop, weights))
    return tuple(segments)


def paa(values, word_length: int) -> np.ndarray:
    """Piecewise aggregate approximation to `word_length` means.

    When the input length is not a multiple of `word_length`, boundary
    points contribute fractional mass to both adjacent segments.
    """
    arr = as_float_vector(values)
    check_positive_int(word_length, "word_length")
    if word_length > arr.size:
        raise ValueError(f"word_length {word_length} exceeds input length {arr.size}")
    return _paa_rows(arr[None, :], word_length)[0]


def _paa_rows(windows: np.ndarray, word_length: int) -> np.ndarray:
    out = np.empty((windows.shape[0], word_length), dtype=np.float64)
    for j, (start, stop, weights) in enumerate(_paa_segments(windows.shape[1], word_length)):
        out[:, j] = (windows[:, start:stop] * weights).sum(axis=1)
    return out


def _znorm_rows(windows: np.ndarray, epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    mu = windows.mean(axis=1, keepdims=True)
    sd = windows.std(axis=1)
    z = windows - mu
    live = sd > epsilon
    z[live] /= sd[live, None]
    z[~live] = 0.0
    return z


def _letter_rows(windows: np.ndarray, params: SaxParams) -> np.ndarray:
    """Letter indices, one row per window. Ties at a breakpoint take the
    lower region (side='left' counts only strictly smaller cuts)."""
    z = _znorm_rows(windows)
    means = _paa_rows(z, params.word_length)
    beta = breakpoints(params.alphabet_size)
    return np.searchsorted(beta, means, side="left").astype(np.int64)


def _codes_from_letters(letters: np.ndarray, alphabet_size: int) -> np.ndarray:
    codes = np.zeros(letters.shape[0], dtype=np.int64)
    for j in range(letters.shape[1]):
        codes *= alphabet_size
        codes += letters[:, j]
    return codes


def _word_fits_int64(params: SaxParams) -> bool:
    return params.alphabet_size ** params.word_length < 2**62


def decode_word(code: int, params: SaxParams) -> str:
    """Inverse of the packed big-endian letter encoding."""
    letters = []
    for _ in range(params.word_length):
        code, rem = divmod(code, params.alphabet_size)
        letters.append(chr(97 + rem))
    return "".join(reversed(letters))


def sax_word(window, params: SaxParams) -> str:
    """The SAX word of a single window (a Subsequence or 1-D values)."""
    values = window.values if isinstance(window, Subsequence) else as_float_vector(window)
    if values.size != params.window_length:
        raise ValueError(
            f"window length {values.size} does not match params.window_length"
            f" {params.window_length}"
        )
    letters = _letter_rows(values[None, :].copy(), params)[0]
    return "".join(chr(97 + int(i)) for i in letters)


def sax_document(series: TimeSeries, params: SaxParams) -> SaxDocument:
    """Symbolize every sliding window of a series, in start order."""
    if params.window_length > len(series):
        raise ValueError(
            f"window_length {params.window_length} exceeds series {series.id!r}"
            f" length {len(series)}"
        )
    windows = sliding_window_view(series.values, params.window_length)
    letters = _letter_rows(np.array(windows, dtype=np.float64), params)
    words = tuple("".join(chr(97 + int(i)) for i in row) for row in letters)
    return SaxDocument(series.id, words)


def _series_codes(values: np.ndarray, params: SaxParams) -> np.ndarray:
    windows = sliding_window_view(values, params.window_length)
    letters = _letter_rows(np.array(windows, dtype=np.float64), params)
    return _codes_from_letters(letters, params.alphabet_size)


def dataset_codes(values_list, params: SaxParams) -> list[np.ndarray]:
    """Encode every series to packed int64 word codes (the fast path).

    Sorting codes numerically equals sorting the words lexicographically,
    because all words share one length and letters map to digits in order.
    Equal-length datasets are processed in batched chunks; the result is
    identical to the per-series route.
    """
    values = [v.values if isinstance(v, TimeSeries) else as_float_vector(v) for v in values_list]
    if not values:
        return []
    if not _word_fits_int64(params):
        return _codes_via_strings(values, params)
    lengths = {v.size for v in values}
    if len(lengths) > 1:
        return [_series_codes(v, params) for v in values]

    m = lengths.pop()
    l = params.window_length
    n_win = m - l + 1
    stacked = np.vstack(values)
    view = sliding_window_view(stacked, l, axis=1)
    rows_per_chunk = max(1, _CHUNK_BUDGET // (n_win * l))
    out: list[np.ndarray] = []
    for lo in range(0, len(values), rows_per_chunk):
        hi = min(lo + rows_per_chunk, len(values))
        flat = np.array(view[lo:hi], dtype=np.float64).reshape(-1, l)
        letters = _letter_rows(flat, params)
        codes = _codes_from_letters(letters, params.alphabet_size)
        out.extend(codes.reshape(hi - lo, n_win))
    return out


def _codes_via_strings(values, params: SaxParams) -> list[np.ndarray]:
    """Fallback when words are too long to pack into int64: dense ids in
    sorted-word order, consistent across the whole dataset."""
    docs = [sax_document(TimeSeries(str(i), v), params) for i, v in enumerate(values)]
    vocab = sorted({w for d in docs for w in d.words})
    index = {w: i for i, w in enumerate(vocab)}
    return [np.array([index[w] for w in d.words], dtype=np.int64) for d in docs]


def encode_documents(docs, params: SaxParams) -> list[np.ndarray]:
    """Packed codes for already-built SaxDocuments.

    Code arrays pass through unchanged, so callers holding the output of
    `dataset_codes` can use the document-level entry points directly.
    """
    docs = list(docs)
    if docs and all(isinstance(d, np.ndarray) for d in docs):
        return [np.asarray(d, dtype=np.int64) for d in docs]
    if not _word_fits_int64(params):
        vocab = sorted({w for d in docs for w in d.words})
        index = {w: i for i, w in enumerate(vocab)}
        return [np.array([index[w] for w in d.words], dtype=np.int64) for d in docs]
    out = []
    for doc in docs:
        codes = np.zeros(len(doc.words), dtype=np.int64)
        for j, word in enumerate(doc.words):
            value = 0
            for ch in word:
                value = value * params.alphabet_size + (ord(ch) - 97)
            codes[j] = value
        out.append(codes)
    return out
