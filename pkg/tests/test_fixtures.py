import numpy as np
import pytest

from spfk.fixtures import (
    BenchmarkRow,
    SyntheticSpec,
    generate_synthetic,
    load_fixture,
)
from spfk.selection import summarize, verdict


@pytest.mark.parametrize("table", ["III", "IV", "V"])
def test_tables_have_thirty_rows(table):
    rows = load_fixture(table)
    assert len(rows) == 30
    assert all(isinstance(r, BenchmarkRow) for r in rows)
    assert all(r.table == table for r in rows)


@pytest.mark.parametrize("table", ["III", "IV", "V"])
def test_recorded_verdicts_are_consistent(table):
    for row in load_fixture(table):
        assert row.verdict == verdict(row.predicted_k, row.actual_k), row.dataset


def test_specific_rows():
    iii = {r.dataset: r for r in load_fixture("III")}
    assert iii["GunPoint"].actual_k == 2
    assert iii["GunPoint"].predicted_k == 2
    assert iii["GunPoint"].verdict == "Correct"
    assert iii["GunPoint"].window_length is None
    assert iii["GunPoint"].alphabet_size is None
    assert iii["GunPoint"].min_freq is None

    iv = {r.dataset: r for r in load_fixture("IV")}
    assert iv["Plane"].window_length == 10
    assert iv["Plane"].alphabet_size == 4
    assert iv["Plane"].actual_k == 7
    assert iv["Plane"].predicted_k == 7
    assert iv["Plane"].min_freq is None
    assert iv["Plane"].max_freq is None

    v = {r.dataset: r for r in load_fixture("V")}
    assert v["Wafer"].min_freq == 0.001
    assert v["Wafer"].max_freq == 0.99
    assert v["Wafer"].predicted_k == 2


def test_out_of_range_source_alphabet_is_preserved():
    v = {r.dataset: r for r in load_fixture("V")}
    assert v["Lightning7"].alphabet_size == 8
    assert v["Lightning7"].source_alphabet == 80
    others = [r for r in load_fixture("V") if r.dataset != "Lightning7"]
    assert all(r.source_alphabet is None for r in others)


def test_table_summaries():
    iii = summarize([r.verdict for r in load_fixture("III")])
    assert iii["correct_pct"] == pytest.approx(20.0)
    assert iii["close_pct"] == pytest.approx(7 * 100.0 / 30)
    assert iii["wrong_pct"] == pytest.approx(17 * 100.0 / 30)

    for table in ("IV", "V"):
        out = summarize([r.verdict for r in load_fixture(table)])
        assert out["correct_pct"] == pytest.approx(60.0)
        assert out["close_pct"] == pytest.approx(20.0)
        assert out["wrong_pct"] == pytest.approx(20.0)


def test_load_fixture_rejects_unknown_table():
    with pytest.raises(ValueError, match="unknown results table"):
        load_fixture("VI")


def test_synthetic_spec_validation():
    with pytest.raises(ValueError, match="unknown generator kind"):
        SyntheticSpec(kind="sawtooth")
    with pytest.raises(ValueError, match="classes"):
        SyntheticSpec(classes=1)
    with pytest.raises(ValueError, match="per_class"):
        SyntheticSpec(per_class=1)
    with pytest.raises(ValueError, match="length"):
        SyntheticSpec(length=3)
    with pytest.raises(ValueError, match="noise"):
        SyntheticSpec(noise=-0.1)


def test_generate_synthetic_shape_and_labels():
    spec = SyntheticSpec(classes=4, per_class=3, length=32, seed=9)
    ds = generate_synthetic(spec)
    assert len(ds) == 12
    assert ds.true_k == 4
    assert ds.name == "synthetic-mixed-4x3-seed9"
    assert [s.label for s in ds.series] == [0] * 3 + [1] * 3 + [2] * 3 + [3] * 3
    assert [s.id for s in ds.series][:2] == ["series-000", "series-001"]
    assert all(len(s) == 32 for s in ds.series)


def test_generate_synthetic_is_deterministic():
    spec = SyntheticSpec(classes=2, per_class=4, length=50, seed=21)
    a = generate_synthetic(spec)
    b = generate_synthetic(spec)
    for sa, sb in zip(a.series, b.series):
        assert sa.values.tobytes() == sb.values.tobytes()
    c = generate_synthetic(SyntheticSpec(classes=2, per_class=4, length=50, seed=22))
    assert any(
        sa.values.tobytes() != sc.values.tobytes()
        for sa, sc in zip(a.series, c.series)
    )


@pytest.mark.parametrize("kind", ["sine", "square", "gaussian-walk", "mixed"])
def test_generate_synthetic_kinds(kind):
    ds = generate_synthetic(SyntheticSpec(kind=kind, classes=2, per_class=2, length=24))
    assert len(ds) == 4
    assert all(np.all(np.isfinite(s.values)) for s in ds.series)
