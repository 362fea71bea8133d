# tests/cli/test_cli.py
# --- agent_meta ---
# role: cli-test
# owner: @backend
# contract: Тестирует подкоманды list/run/check и коды возврата CLI
# last_reviewed: 2026-10-16
# interfaces:
#   - test_list_json()
#   - test_run_and_check()
#   - test_errors_exit_with_2()
#   - test_example_configs_validate()
#   - test_app_settings_from_env()
# --- /agent_meta ---

import json
from pathlib import Path

import pytest

from src.cli.app import build_parser, main
from src.config import AppSettings
from src.harness import get_global_registry, get_harness_settings, load_config_file, load_criteria


@pytest.fixture(autouse=True)
def _settings(monkeypatch):
    monkeypatch.setenv("LGT_THREADS", "1")
    get_harness_settings.cache_clear()
    yield
    get_harness_settings.cache_clear()


def test_list_json(capsys):
    assert main(["list", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    names = {item["name"] for item in data["scenarios"]}
    assert len(names) == 16
    defaults = [item for item in data["scenarios"] if item["default"]]
    assert {item["version"] for item in defaults} == {"v1"}


def test_list_text(capsys):
    assert main(["list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "* fig2_energy@v1: Energy error of WALA, toric and polarized ansatzes against the exact ground state" in lines
    assert any(line.startswith("  fig2_energy@small:") for line in lines)


def test_run_and_check(tmp_path, capsys):
    config = tmp_path / "energy.yaml"
    config.write_text("scenario: fig2_energy\nversion: small\nh_e_grid: [0.5]\n", encoding="utf-8")

    assert main(["run", "--config", str(config), "--seed", "3", "--out", str(tmp_path / "out"), "--check"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["scenario"] == "fig2_energy"
    assert summary["check"]["passed"] is True
    bundle = tmp_path / "out" / "fig2_energy"
    assert summary["bundle"] == str(bundle)

    assert main(["check", str(bundle)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True

    (bundle / "energy.csv").write_text("tampered\n", encoding="utf-8")
    assert main(["check", str(bundle)]) == 2


def test_errors_exit_with_2(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "absent.json")]) == 2
    assert "error:" in capsys.readouterr().err

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"scenario": "fig2_energy", "dt": -1}), encoding="utf-8")
    assert main(["run", "--config", str(bad), "--out", str(tmp_path)]) == 2


def test_parser_requires_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_example_configs_validate():
    """Примеры из src/cli/configs проходят валидацию сценария."""
    configs = Path(__file__).resolve().parents[2] / "src" / "cli" / "configs"
    for path in sorted(configs.glob("*.yaml")):
        if path.name.startswith("criteria"):
            assert load_criteria(path)
            continue
        data = load_config_file(path)
        scenario = get_global_registry().get_scenario(data.pop("scenario"), data.pop("version", None))
        assert scenario.configure(data).seed == data["seed"]


def test_app_settings_from_env(monkeypatch):
    monkeypatch.setenv("LGT_ENGINE_MAX_QUBITS", "20")
    monkeypatch.setenv("LGT_NOISE_P2", "0.01")
    monkeypatch.setenv("LGT_OUT_DIR", "elsewhere")
    settings = AppSettings()
    assert settings.engine.max_qubits == 20
    assert settings.noise.p2 == 0.01
    assert settings.harness.out_dir == "elsewhere"
    assert settings.harness.threads == 1
    assert settings.solver.dense_max_qubits == 12
