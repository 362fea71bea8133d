# tests/harness/conftest.py
# --- agent_meta ---
# role: harness-test-fixtures
# owner: @backend
# contract: Общие фикстуры тестов прогона: чистый реестр, изолированные настройки, бандл из строк
# last_reviewed: 2026-10-16
# interfaces:
#   - registry()
#   - isolated_settings()
#   - make_result(rows)
# --- /agent_meta ---

from typing import List

import pytest

from src.harness import (
    ResultRow,
    ScenarioRegistry,
    ScenarioResult,
    get_harness_settings,
    register_builtin_scenarios,
)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    monkeypatch.setenv("LGT_THREADS", "2")
    monkeypatch.setenv("LGT_OUT_DIR", str(tmp_path / "results"))
    get_harness_settings.cache_clear()
    yield
    get_harness_settings.cache_clear()


@pytest.fixture
def registry() -> ScenarioRegistry:
    return register_builtin_scenarios(ScenarioRegistry())


def make_result(rows: List[ResultRow], scenario: str = "synthetic") -> ScenarioResult:
    return ScenarioResult(
        scenario=scenario,
        version="v1",
        config={"seed": 7},
        rows=rows,
        jobs=[{"key": ["0.0"], "runtime_seconds": 0.01, "retention": [{"t": 0.0, "fraction": 0.9}]}],
    )


def row(observable: str, value: float, **kw) -> ResultRow:
    return ResultRow(scenario="synthetic", observable=observable, value=value, **kw)
