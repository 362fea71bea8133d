# tests/harness/test_checks_and_bundle.py
# --- agent_meta ---
# role: bundle-and-criteria-test
# owner: @backend
# contract: Тестирует запись и загрузку бандла, проверку целостности и все виды критериев
# last_reviewed: 2026-10-16
# interfaces:
#   - test_bundle_layout()
#   - test_integrity_detects_tampered_row()
#   - test_abs_le_and_between()
#   - test_less_than_series_by_variant()
#   - test_argmax_within()
#   - test_non_decreasing_with_sigma()
#   - test_no_interior_peak()
#   - test_series_agree()
#   - test_load_criteria_yaml()
# --- /agent_meta ---

import json

import pytest
import yaml

from src.harness import (
    CSV_COLUMNS,
    BundleError,
    CriterionError,
    MissingObservableError,
    check_bundle,
    load_bundle,
    load_criteria,
    verify_integrity,
    write_bundle,
)

from .conftest import make_result, row


@pytest.fixture
def rows():
    out = []
    for t, v in [(0.0, 0.1), (0.3, 0.4), (0.6, 0.9), (0.9, 0.7)]:
        out.append(row("peak", v, t=t))
    for h, (a, b) in zip([0.0, 1.0, 2.0], [(0.0, 0.2), (0.05, 0.3), (0.1, 0.1 + 1e-12)]):
        out.append(row("energy_error", a, variant="wala", h_e=h))
        out.append(row("energy_error", b, variant="toric", h_e=h))
    out.append(row("deviation", 1e-12, site="a"))
    out.append(row("deviation", -3e-11, site="b"))
    out.append(row("retention", 0.8, variant="fraction", stage="postselected"))
    out.append(row("retention", 0.6, variant="fraction", stage="readout"))
    out.append(row("rising", 1.0, t=0.0, stderr=0.1))
    out.append(row("rising", 0.95, t=0.3, stderr=0.1))
    out.append(row("rising", 1.4, t=0.6, stderr=0.1))
    out.append(row("by_variant", 0.1, variant="a", site="x"))
    out.append(row("by_variant", 0.2, variant="b", site="x"))
    return out


@pytest.fixture
def bundle(tmp_path, rows):
    return write_bundle(tmp_path / "synthetic", make_result(rows), "0.1.0")


def test_bundle_layout(bundle):
    """Одна таблица на наблюдаемую, манифест с дайджестами и служебными сведениями."""
    files = sorted(p.name for p in bundle.path.iterdir())
    assert files == sorted(
        ["manifest.json", "peak.csv", "energy_error.csv", "deviation.csv", "retention.csv", "rising.csv", "by_variant.csv"]
    )
    manifest = json.loads((bundle.path / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["seed"] == 7
    assert manifest["code_version"] == "0.1.0"
    assert manifest["tables"]["peak"]["rows"] == 4
    assert len(manifest["tables"]["peak"]["row_sha256"]) == 4
    assert manifest["retention"] == [{"job": ["0.0"], "t": 0.0, "fraction": 0.9}]

    header = (bundle.path / "peak.csv").read_text(encoding="utf-8").splitlines()[0]
    assert tuple(header.split(",")) == CSV_COLUMNS

    loaded = load_bundle(bundle.path)
    assert loaded.scenario == "synthetic"
    assert [r.value for r in loaded.rows("peak")] == [0.1, 0.4, 0.9, 0.7]
    assert verify_integrity(loaded) == []


def test_bundle_bytes_are_reproducible(tmp_path, rows):
    a = write_bundle(tmp_path / "a", make_result(rows), "0.1.0")
    b = write_bundle(tmp_path / "b", make_result(rows), "0.1.0")
    for name in ("peak.csv", "energy_error.csv", "rising.csv"):
        assert (a.path / name).read_bytes() == (b.path / name).read_bytes()


def test_integrity_detects_tampered_row(bundle):
    file = bundle.path / "peak.csv"
    file.write_text(file.read_text(encoding="utf-8").replace(",0.6,0.9,", ",0.6,0.95,"), encoding="utf-8")
    problems = verify_integrity(load_bundle(bundle.path))
    assert len(problems) == 1
    assert "peak.csv: row 3 differs" in problems[0]

    report = check_bundle(load_bundle(bundle.path), [{"name": "integrity", "kind": "integrity"}])
    assert not report.passed
    assert report.results[0].margin < 0


def test_integrity_detects_missing_file(bundle):
    (bundle.path / "rising.csv").unlink()
    with pytest.raises(BundleError):
        load_bundle(bundle.path)
    assert verify_integrity(bundle) == ["rising.csv: missing"]


def test_load_bundle_errors(tmp_path, bundle):
    with pytest.raises(BundleError):
        load_bundle(tmp_path / "nowhere")
    (bundle.path / "manifest.json").write_text("{not json", encoding="utf-8")
    with pytest.raises(BundleError):
        load_bundle(bundle.path)


def test_abs_le_and_between(bundle):
    report = check_bundle(
        bundle,
        [
            {"name": "tight", "kind": "abs_le", "observable": "deviation", "tol": 1e-10},
            {"name": "too_tight", "kind": "abs_le", "observable": "deviation", "tol": 1e-11},
            {"name": "only_a", "kind": "abs_le", "observable": "deviation", "where": {"site": "a"}, "tol": 1e-11},
            {"name": "window", "kind": "between", "observable": "retention", "low": 0.5, "high": 1.0},
            {
                "name": "postselected_only",
                "kind": "between",
                "observable": "retention",
                "where": {"stage": "postselected"},
                "low": 0.7,
            },
        ],
    )
    by_name = {r.name: r for r in report.results}
    assert by_name["tight"].passed
    assert by_name["tight"].margin == pytest.approx(7e-11)
    assert not by_name["too_tight"].passed
    assert by_name["only_a"].passed
    assert by_name["window"].passed
    assert by_name["window"].margin == pytest.approx(0.1)
    assert by_name["postselected_only"].passed
    assert not report.passed


def test_between_needs_bounds(bundle):
    with pytest.raises(CriterionError):
        check_bundle(bundle, [{"name": "x", "kind": "between", "observable": "retention"}])


def test_less_than_series_by_variant(bundle):
    report = check_bundle(
        bundle,
        [
            {
                "name": "wala_below_toric",
                "kind": "less_than_series",
                "observable": "energy_error",
                "where": {"variant": "wala"},
                "other": {"variant": "toric"},
                "key": "h_e",
            },
            {
                "name": "toric_below_wala",
                "kind": "less_than_series",
                "observable": "energy_error",
                "where": {"variant": "toric"},
                "other": {"variant": "wala"},
                "key": "h_e",
            },
        ],
    )
    assert report.results[0].passed
    assert report.results[0].margin == pytest.approx(1e-12, abs=1e-13)
    assert not report.results[1].passed


def test_less_than_series_with_string_key(bundle):
    """Ряды сопоставляются и по строковому столбцу."""
    result = check_bundle(
        bundle,
        [
            {
                "name": "by_variant",
                "kind": "less_than_series",
                "observable": "by_variant",
                "where": {"variant": "a"},
                "other": {"variant": "b"},
                "key": "site",
            }
        ],
    ).results[0]
    assert result.passed
    assert result.margin == pytest.approx(0.1)
    assert "site=x" in result.detail


def test_argmax_within(bundle):
    results = check_bundle(
        bundle,
        [
            {"name": "inside", "kind": "argmax_within", "observable": "peak", "low": 0.5, "high": 0.7},
            {"name": "outside", "kind": "argmax_within", "observable": "peak", "low": 0.0, "high": 0.3},
            {
                "name": "edge",
                "kind": "argmax_within",
                "observable": "peak",
                "key_max": 0.6,
                "low": 0.0,
                "high": 1.0,
                "interior": True,
            },
        ],
    ).results
    assert results[0].passed
    assert results[0].margin == pytest.approx(0.1)
    assert not results[1].passed
    assert not results[2].passed
    assert "grid edge" in results[2].detail

    with pytest.raises(CriterionError):
        check_bundle(bundle, [{"name": "s", "kind": "argmax_within", "observable": "by_variant", "key": "variant", "low": 0, "high": 1}])


def test_non_decreasing_with_sigma(bundle):
    strict, loose = check_bundle(
        bundle,
        [
            {"name": "strict", "kind": "non_decreasing", "observable": "rising"},
            {"name": "loose", "kind": "non_decreasing", "observable": "rising", "sigma": 1.0},
        ],
    ).results
    assert not strict.passed
    assert strict.margin == pytest.approx(-0.05)
    assert loose.passed


def test_missing_observable(bundle):
    with pytest.raises(MissingObservableError):
        check_bundle(bundle, [{"name": "m", "kind": "abs_le", "observable": "absent", "tol": 1.0}])
    with pytest.raises(MissingObservableError):
        check_bundle(bundle, [{"name": "m", "kind": "abs_le", "observable": "peak", "where": {"variant": "zzz"}, "tol": 1.0}])
    with pytest.raises(CriterionError):
        check_bundle(bundle, [{"name": "m", "kind": "abs_le", "tol": 1.0}])


def test_load_criteria_yaml(tmp_path, bundle):
    path = tmp_path / "criteria.yaml"
    path.write_text(
        yaml.safe_dump({"criteria": [{"name": "window", "kind": "between", "observable": "retention", "low": 0.5}]}),
        encoding="utf-8",
    )
    criteria = load_criteria(path)
    assert [c.name for c in criteria] == ["window"]
    assert check_bundle(bundle, criteria).passed

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"name": "x", "kind": "nope"}]), encoding="utf-8")
    with pytest.raises(CriterionError):
        load_criteria(bad)


@pytest.fixture
def excitation_bundle(tmp_path):
    grid = [1.0, 1.5, 2.0, 2.5, 3.0]
    tracks = {
        "A1": [0.10, 0.30, 0.60, 0.30, 0.20],
        "A2": [0.10, 0.12, 0.14, 0.16, 0.18],
        "Avac": [0.11, 0.12, 0.15, 0.15, 0.17],
        "bumpy": [0.10, 0.35, 0.10, 0.10, 0.10],
    }
    out = [row("p_excitation", v, variant=name, h_e=h) for name, values in tracks.items() for h, v in zip(grid, values)]
    return write_bundle(tmp_path / "excitation", make_result(out), "0.1.0")


def test_no_interior_peak(excitation_bundle):
    """Внутренний пик сравнивается с краями ряда и, если задан other, с пиком опорного ряда."""
    base = {"kind": "no_interior_peak", "observable": "p_excitation", "key": "h_e"}
    reference = {"other": {"variant": "A1"}, "factor": 0.5}
    flat, vacuum, bumpy, absolute = check_bundle(
        excitation_bundle,
        [
            {**base, **reference, "name": "flat", "where": {"variant": "A2"}},
            {**base, **reference, "name": "vacuum", "where": {"variant": "Avac"}},
            {**base, **reference, "name": "bumpy", "where": {"variant": "bumpy"}},
            {**base, "name": "absolute", "where": {"variant": "A2"}},
        ],
    ).results
    assert flat.passed
    assert flat.margin == pytest.approx(0.22)
    assert vacuum.passed
    assert not bumpy.passed
    assert bumpy.margin == pytest.approx(-0.05)
    assert absolute.passed
    assert absolute.margin == pytest.approx(0.02)

    with pytest.raises(CriterionError):
        check_bundle(excitation_bundle, [{**base, "name": "short", "where": {"variant": "A2"}, "key_max": 1.5}])


def test_series_agree(excitation_bundle):
    base = {"kind": "series_agree", "observable": "p_excitation", "key": "h_e"}
    close, apart = check_bundle(
        excitation_bundle,
        [
            {**base, "name": "close", "where": {"variant": "A2"}, "other": {"variant": "Avac"}, "factor": 2.0},
            {**base, "name": "apart", "where": {"variant": "A1"}, "other": {"variant": "A2"}, "factor": 0.5},
        ],
    ).results
    assert close.passed
    assert close.margin == pytest.approx(2.0 * 0.08 - 0.01)
    assert not apart.passed
    assert apart.margin == pytest.approx(0.5 * 0.5 - 0.46)

    with pytest.raises(CriterionError):
        check_bundle(
            excitation_bundle,
            [{**base, "name": "disjoint", "where": {"variant": "A2", "h_e": 1.0}, "other": {"variant": "Avac", "h_e": 3.0}}],
        )
