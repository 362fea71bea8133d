# tests/harness/test_registry.py
# --- agent_meta ---
# role: scenario-registry-test
# owner: @backend
# contract: Тестирует реестр сценариев, слияние конфигурации и порядок исполнения заданий
# last_reviewed: 2026-10-16
# interfaces:
#   - test_builtin_catalog()
#   - test_register_versions_and_default()
#   - test_unregister()
#   - test_configure_merges_version_defaults()
#   - test_seed_for_is_deterministic()
#   - test_runner_orders_jobs_by_key()
# --- /agent_meta ---

from typing import Any, Dict, List

import pytest
from pydantic import ValidationError

from src.harness import (
    AbstractScenario,
    ExperimentConfig,
    Job,
    JobOutput,
    JobRunner,
    ScenarioExecutionError,
    ScenarioNotFoundError,
    ScenarioRegistrationError,
    ScenarioRegistry,
    merge_config,
)
from src.lattice import Lattice

from .conftest import row

BUILTIN = {
    "fig2_energy",
    "fig2_wala_terms",
    "wala_quality",
    "fig3_charges",
    "fig3_superposition",
    "fig3_conditional",
    "s4_single_charge_quench",
    "edfig4_depol_models",
    "fig4_string_szz",
    "edfig9_aux_correlators",
    "s5_string_correlator",
    "s6_lambda_zero_strings",
    "fig5_breaking",
    "fig5_resonance",
    "trotter_error_scan",
    "loschmidt_calibration",
}


class _Echo(AbstractScenario):
    name = "echo"
    description = "Echo of the grid"

    def base_config(self) -> Dict[str, Any]:
        return {"lattice": {"lx": 2, "ly": 2}, "h_e_grid": [0.0, 1.0], "seed": 1}

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [
            Job((lam, h), lambda h=h, lam=lam: JobOutput(rows=[row("echo", h + lam, h_e=h, lam=lam)]))
            for h, lam in config.grid
        ]


class _Broken(_Echo):
    name = "broken"

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        def fail() -> JobOutput:
            raise RuntimeError("boom")
        return [Job((0,), fail)]


def test_builtin_catalog(registry):
    assert set(registry.get_scenario_names()) == BUILTIN
    for name in BUILTIN:
        assert registry.get_versions(name) == ["small", "v1"]
        assert registry.get_info(name).version == "v1"
        assert registry.get_info(name).is_default


def test_register_versions_and_default():
    reg = ScenarioRegistry()
    reg.register("echo", _Echo, "v1")
    reg.register("echo", _Echo, "v2", default_config={"h_e_grid": [0.5]}, set_as_default=True)
    assert reg.get_info("echo").version == "v2"
    assert reg.get_scenario("echo", "v1").defaults["h_e_grid"] == [0.0, 1.0]
    assert reg.get_scenario("echo").defaults["h_e_grid"] == [0.5]
    assert reg.get_info("echo", "v1").description == "Echo of the grid"

    with pytest.raises(ScenarioNotFoundError):
        reg.get_scenario("echo", "v3")
    with pytest.raises(ScenarioNotFoundError):
        reg.get_scenario("missing")
    with pytest.raises(ScenarioRegistrationError):
        reg.register("bad", dict)


def test_unregister():
    reg = ScenarioRegistry()
    reg.register("echo", _Echo, "v1")
    reg.register("echo", _Echo, "v2", set_as_default=True)
    reg.unregister("echo", "v2")
    assert reg.get_info("echo").version == "v1"
    reg.unregister("echo")
    assert reg.get_scenario_names() == []
    with pytest.raises(ScenarioNotFoundError):
        reg.unregister("echo")


def test_merge_config_is_recursive():
    merged = merge_config({"lattice": {"lx": 4, "ly": 3}, "seed": 1}, {"lattice": {"lx": 2}})
    assert merged == {"lattice": {"lx": 2, "ly": 3}, "seed": 1}


def test_configure_merges_version_defaults(registry):
    scenario = registry.get_scenario("fig2_energy", "small")
    config = scenario.configure({"h_e_grid": [0.5]})
    assert (config.lattice.lx, config.lattice.ly) == (2, 3)
    assert config.h_e_grid == [0.5]
    assert config.scenario == "fig2_energy"
    assert config.version == "small"

    with pytest.raises(ValidationError):
        scenario.configure({"unknown_field": 1})
    with pytest.raises(ValidationError):
        scenario.configure({"dt": -0.1})


def test_grid_is_lambda_major():
    config = ExperimentConfig(scenario="x", lattice={"lx": 2, "ly": 2}, seed=0, h_e_grid=[0.0, 1.0], lam_grid=[0.1, 0.2])
    assert config.grid == [(0.0, 0.1), (1.0, 0.1), (0.0, 0.2), (1.0, 0.2)]
    assert config.times[:2] == [0.0, 0.3]


def test_seed_for_is_deterministic():
    a = ExperimentConfig(scenario="x", lattice={"lx": 2, "ly": 2}, seed=11)
    b = ExperimentConfig(scenario="x", lattice={"lx": 2, "ly": 2}, seed=11)
    c = ExperimentConfig(scenario="x", lattice={"lx": 2, "ly": 2}, seed=12)
    assert a.seed_for("shots", 0.5, 0.0) == b.seed_for("shots", 0.5, 0.0)
    assert a.seed_for("shots", 0.5, 0.0) != a.seed_for("shots", 1.0, 0.0)
    assert a.seed_for("shots", 0.5, 0.0) != c.seed_for("shots", 0.5, 0.0)


def test_noise_forces_gate_level():
    quiet = ExperimentConfig(scenario="x", lattice={"lx": 2, "ly": 2}, seed=3)
    noisy = ExperimentConfig(scenario="x", lattice={"lx": 2, "ly": 2}, seed=3, noise={})
    assert quiet.trotter_spec(0.5, 0.0).mode == "direct"
    assert noisy.trotter_spec(0.5, 0.0).mode == "gate_level"
    assert quiet.noise_for("a") is None
    assert noisy.noise_for("a").master_seed == noisy.seed_for("noise", "a")


def test_prep_kind_alias():
    config = ExperimentConfig(scenario="x", lattice={"lx": 2, "ly": 2}, seed=0, prep={"kind": "wala+string"})
    assert config.prep.kind == "wala_string"


def test_runner_orders_jobs_by_key():
    seen = []

    def job(k):
        def run():
            seen.append(k)
            return JobOutput(rows=[row("k", float(k))])
        return Job((k,), run)

    records = JobRunner(max_workers=1).execute([job(3), job(1), job(2)])
    assert [j.key for j, _, _ in records] == [(1,), (2,), (3,)]
    assert seen == [1, 2, 3]

    with pytest.raises(ValueError):
        JobRunner(max_workers=2).execute([job(1), job(1)])


def test_run_collects_rows_in_key_order():
    scenario = _Echo(runner=JobRunner(max_workers=2))
    result = scenario.run(scenario.configure({"lam_grid": [0.5, 0.0]}))
    assert [(r.h_e, r.lam) for r in result.rows] == [(0.0, 0.0), (1.0, 0.0), (0.0, 0.5), (1.0, 0.5)]
    assert len(result.jobs) == 4
    assert result.config["seed"] == 1


def test_run_wraps_job_errors():
    scenario = _Broken()
    with pytest.raises(ScenarioExecutionError):
        scenario.run(scenario.configure())
