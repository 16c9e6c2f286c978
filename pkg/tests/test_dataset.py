import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spfk.dataset import (
    Dataset,
    DatasetError,
    TimeSeries,
    load_ucr,
    save_ucr,
    subsequences,
    znormalize,
)


def test_timeseries_basics():
    ts = TimeSeries("a", [1.0, 2.0, 3.0])
    assert len(ts) == 3
    assert ts.label is None
    assert ts.values.dtype == np.float64


def test_timeseries_values_are_frozen():
    ts = TimeSeries("a", [1.0, 2.0])
    with pytest.raises(ValueError):
        ts.values[0] = 9.0


def test_timeseries_rejects_short_and_nonfinite():
    with pytest.raises(ValueError):
        TimeSeries("a", [1.0])
    with pytest.raises(ValueError):
        TimeSeries("a", [1.0, float("nan")])
    with pytest.raises(ValueError):
        TimeSeries("a", [1.0, float("inf")])


def test_dataset_true_k_from_labels():
    series = [TimeSeries(str(i), [0.0, 1.0], label=i % 2) for i in range(4)]
    ds = Dataset("d", tuple(series))
    assert ds.true_k == 2
    assert len(ds) == 4
    assert ds.min_length == 2


def test_dataset_no_true_k_when_unlabeled():
    series = [TimeSeries(str(i), [0.0, 1.0]) for i in range(3)]
    assert Dataset("d", tuple(series)).true_k is None


def test_dataset_rejects_duplicates_and_empty():
    s = TimeSeries("x", [0.0, 1.0])
    with pytest.raises(ValueError):
        Dataset("d", (s, s))
    with pytest.raises(DatasetError):
        Dataset("d", ())


def test_dataset_true_k_bounds():
    series = (TimeSeries("0", [0.0, 1.0]), TimeSeries("1", [0.0, 1.0]))
    with pytest.raises(ValueError):
        Dataset("d", series, true_k=3)
    with pytest.raises(ValueError):
        Dataset("d", series, true_k=1)


def test_from_arrays():
    ds = Dataset.from_arrays("d", np.arange(12.0).reshape(3, 4), labels=[0, 1, 0])
    assert [s.id for s in ds.series] == ["0", "1", "2"]
    assert ds.true_k == 2
    with pytest.raises(ValueError):
        Dataset.from_arrays("d", np.zeros((3, 4)), labels=[0, 1])


def test_load_ucr_tab(tmp_path):
    path = tmp_path / "toy.tsv"
    path.write_text("2\t0.1\t0.2\t0.3\n1\t5\t6\t7\t8\n")
    ds = load_ucr(path)
    assert ds.name == "toy"
    assert len(ds) == 2
    assert ds.series[0].label == 2
    np.testing.assert_allclose(ds.series[0].values, [0.1, 0.2, 0.3])
    assert len(ds.series[1]) == 4  # ragged rows are fine
    assert ds.true_k == 2


def test_load_ucr_comma_and_trailing_fields(tmp_path):
    path = tmp_path / "toy.csv"
    path.write_text("1,0.5,1.5,,\n1,2.5,3.5\n")
    ds = load_ucr(path)
    np.testing.assert_allclose(ds.series[0].values, [0.5, 1.5])
    assert ds.true_k is None  # single distinct label


def test_load_ucr_real_coded_labels(tmp_path):
    path = tmp_path / "toy.tsv"
    path.write_text("2.0\t0\t1\n3.0000000001\t0\t1\n")
    ds = load_ucr(path)
    assert [s.label for s in ds.series] == [2, 3]


@pytest.mark.parametrize(
    "content,fragment",
    [
        ("2.5\t0\t1\n", "not integer-valued"),
        ("x\t0\t1\n", "non-numeric label"),
        ("1\t0\toops\n", "row 0"),
        ("1\t0\tnan\n", "row 0"),
        ("1\t0\tinf\n", "row 0"),
        ("1\t0\n", "fewer than 2"),
        ("", "no series"),
        ("\n\n", "no series"),
    ],
)
def test_load_ucr_rejects(tmp_path, content, fragment):
    path = tmp_path / "bad.tsv"
    path.write_text(content)
    with pytest.raises(DatasetError, match=fragment):
        load_ucr(path)


def test_load_ucr_missing_file(tmp_path):
    with pytest.raises(DatasetError, match="cannot read"):
        load_ucr(tmp_path / "nope.tsv")


def test_ucr_round_trip(tmp_path, rng):
    series = tuple(
        TimeSeries(str(i), rng.normal(size=5 + i), label=i % 3) for i in range(6)
    )
    ds = Dataset("rt", series)
    path = tmp_path / "rt.tsv"
    save_ucr(ds, path)
    back = load_ucr(path)
    assert back.true_k == ds.true_k
    for old, new in zip(ds.series, back.series):
        assert new.label == old.label
        np.testing.assert_allclose(new.values, old.values, rtol=0, atol=1e-12)


def test_save_ucr_defaults_missing_labels_to_zero(tmp_path):
    ds = Dataset("d", (TimeSeries("0", [1.0, 2.0]), TimeSeries("1", [3.0, 4.0])))
    path = tmp_path / "d.tsv"
    save_ucr(ds, path)
    assert path.read_text().startswith("0\t")


def test_znormalize_examples():
    np.testing.assert_allclose(znormalize([1, 3]), [-1.0, 1.0])
    np.testing.assert_array_equal(znormalize([5, 5, 5]), [0.0, 0.0, 0.0])
    expected = (np.arange(5) - 2.0) / math.sqrt(2.0)
    np.testing.assert_allclose(znormalize([0, 1, 2, 3, 4]), expected, atol=1e-12)


@given(
    st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=40).filter(
        lambda xs: np.std(xs) > 1e-6
    )
)
def test_znormalize_moments(xs):
    z = znormalize(xs)
    assert abs(z.mean()) < 1e-9
    assert abs(z.std() - 1.0) < 1e-9


def test_subsequences_examples():
    ts = TimeSeries("s", [0.0, 1.0, 2.0, 3.0, 4.0])
    assert len(subsequences(ts, 5)) == 1
    subs = subsequences(ts, 2)
    assert [s.start for s in subs] == [0, 1, 2, 3]
    assert all(s.source_id == "s" for s in subs)
    np.testing.assert_array_equal(subs[2].values, [2.0, 3.0])
    with pytest.raises(ValueError):
        subsequences(TimeSeries("s", [0.0, 1.0, 2.0]), 4)


@given(st.integers(2, 60), st.data())
def test_subsequences_count_law(m, data):
    l = data.draw(st.integers(1, m))
    ts = TimeSeries("s", np.arange(float(m)))
    assert len(subsequences(ts, l)) == m - l + 1
