# tests/harness/test_service.py
# --- agent_meta ---
# role: harness-service-test
# owner: @backend
# contract: Тестирует прогон сценариев в бандл, воспроизводимость по сиду и проверку бандла с диска
# last_reviewed: 2026-10-16
# interfaces:
#   - test_run_small_energy_scenario()
#   - test_same_seed_same_bytes()
#   - test_rerun_from_manifest()
#   - test_check_bundle_path()
#   - test_list_scenarios()
#   - test_confined_average_is_fraction_of_mixed_state()
#   - test_all_scenarios_small()  [slow]
# --- /agent_meta ---

import pytest

from src.harness import ConfigLoadError, ScenarioNotFoundError, check_bundle_path, list_scenarios, run_experiment

from .test_registry import BUILTIN

_ENERGY = {"scenario": "fig2_energy", "version": "small", "h_e_grid": [0.0, 1.0]}


def _tables(path):
    return {p.name: p.read_bytes() for p in sorted(path.glob("*.csv"))}


def test_run_small_energy_scenario(tmp_path, registry):
    outcome = run_experiment(_ENERGY, out_dir=tmp_path, check=True, registry=registry)
    assert outcome.bundle.path == tmp_path / "fig2_energy"
    assert {"energy", "energy_error", "theta", "wala_analytic_deviation"} <= set(outcome.bundle.observables)
    assert outcome.report is not None
    assert outcome.passed, outcome.report.summary()

    exact = [r for r in outcome.bundle.rows("energy") if r.variant == "exact" and r.h_e == 0.0]
    assert exact[0].value == pytest.approx(-8.0)


def test_same_seed_same_bytes(tmp_path, registry):
    a = run_experiment(_ENERGY, seed=5, out_dir=tmp_path / "a", registry=registry)
    b = run_experiment(_ENERGY, seed=5, out_dir=tmp_path / "b", registry=registry)
    assert a.bundle.manifest["seed"] == 5
    assert _tables(a.bundle.path) == _tables(b.bundle.path)


def test_rerun_from_manifest(tmp_path, registry):
    first = run_experiment(_ENERGY, out_dir=tmp_path / "first", registry=registry)
    again = run_experiment(first.bundle.path / "manifest.json", out_dir=tmp_path / "again", registry=registry)
    assert again.bundle.manifest["version"] == "small"
    assert _tables(first.bundle.path) == _tables(again.bundle.path)


def test_check_bundle_path(tmp_path, registry):
    outcome = run_experiment(_ENERGY, out_dir=tmp_path, registry=registry)
    report = check_bundle_path(outcome.bundle.path, registry=registry)
    assert report.passed
    assert {r.name for r in report.results} >= {"wala_not_worse_than_toric", "bundle_integrity"}

    criteria = tmp_path / "criteria.yaml"
    criteria.write_text(
        "- name: exact_energy_bounded\n"
        "  kind: between\n"
        "  observable: energy\n"
        "  where: {variant: exact}\n"
        "  high: 0.0\n",
        encoding="utf-8",
    )
    report = check_bundle_path(outcome.bundle.path / "manifest.json", criteria, registry=registry)
    assert [r.name for r in report.results] == ["exact_energy_bounded"]
    assert report.passed


def test_run_errors(tmp_path, registry):
    with pytest.raises(ConfigLoadError):
        run_experiment({"h_e_grid": [0.0]}, out_dir=tmp_path, registry=registry)
    with pytest.raises(ConfigLoadError):
        run_experiment(tmp_path / "missing.yaml", out_dir=tmp_path, registry=registry)
    with pytest.raises(ScenarioNotFoundError):
        run_experiment({"scenario": "fig9"}, out_dir=tmp_path, registry=registry)


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_all_scenarios_small(tmp_path, registry, name):
    """Каждый сценарий проходит на малой решётке и пишет целостный бандл."""
    outcome = run_experiment({"scenario": name, "version": "small"}, out_dir=tmp_path, check=True, registry=registry)
    assert outcome.bundle.observables
    integrity = [r for r in outcome.report.results if r.kind == "integrity"]
    assert all(r.passed for r in integrity)


def test_list_scenarios(registry):
    catalog = list_scenarios(registry)
    assert len(catalog) == 2 * len(BUILTIN)
    assert [(i.name, i.version) for i in catalog] == sorted((i.name, i.version) for i in catalog)
    assert sum(i.is_default for i in catalog) == len(BUILTIN)


def test_confined_average_is_fraction_of_mixed_state(tmp_path, registry):
    """Среднее расстояние нормируется на смешанное состояние решётки (5/3 на 2×3)."""
    config = {"scenario": "fig3_charges", "version": "small", "h_e_grid": [2.0]}
    outcome = run_experiment(config, out_dir=tmp_path, check=True, registry=registry)
    average = outcome.bundle.rows("separation_time_average")[0].value
    fraction = outcome.bundle.rows("separation_average_to_mixed")[0].value
    assert fraction == pytest.approx(average / (5.0 / 3.0))
    result = next(r for r in outcome.report.results if r.name == "confined_average_below_mixed_state")
    assert result.passed
    assert fraction < 0.75
