# src/harness/service.py
# --- agent_meta ---
# role: harness-service
# owner: @backend
# contract: Точки входа исполнителя: каталог сценариев, прогон конфигурации в бандл, проверка бандла критериями
# last_reviewed: 2026-10-16
# interfaces:
#   - list_scenarios(registry=None) -> list[ScenarioInfo]
#   - run_experiment(raw, seed=None, out_dir=None, check=False) -> RunOutcome
#   - check_bundle_path(bundle, criteria=None) -> CheckReport
# --- /agent_meta ---

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from src.utils import get_logger

from .bundle import MANIFEST_NAME, ResultBundle, load_bundle, write_bundle
from .checks import Criterion, check_bundle, load_criteria
from .config import get_harness_settings, load_config_file
from .errors import ConfigLoadError
from .models import CheckReport
from .registry import ScenarioInfo, ScenarioRegistry, get_global_registry

_log = get_logger(__name__)


@dataclass
class RunOutcome:
    bundle: ResultBundle
    report: Optional[CheckReport] = None

    @property
    def passed(self) -> bool:
        return self.report is None or self.report.passed


def list_scenarios(registry: Optional[ScenarioRegistry] = None) -> List[ScenarioInfo]:
    return (registry or get_global_registry()).list_scenarios()


def _as_config(raw: Union[str, Path, Dict[str, Any]]) -> Dict[str, Any]:
    """Словарь конфигурации из файла или словаря; манифест бандла тоже принимается."""
    data = load_config_file(raw) if isinstance(raw, (str, Path)) else dict(raw)
    if "tables" in data and isinstance(data.get("config"), dict):
        data = dict(data["config"])
    if not data.get("scenario"):
        raise ConfigLoadError(str(raw) if isinstance(raw, (str, Path)) else "<dict>", "config has no 'scenario'")
    return data


def run_experiment(
    raw: Union[str, Path, Dict[str, Any]],
    *,
    seed: Optional[int] = None,
    out_dir: Optional[Union[str, Path]] = None,
    check: bool = False,
    registry: Optional[ScenarioRegistry] = None,
) -> RunOutcome:
    """Прогон сценария и запись бандла в <out>/<scenario>.

    Порядок приоритета сида и каталога: аргументы, файл конфигурации, умолчания сценария и настройки.
    """
    registry = registry or get_global_registry()
    overrides = _as_config(raw)
    name = overrides.pop("scenario")
    version = overrides.pop("version", None)
    if seed is not None:
        overrides["seed"] = seed

    scenario = registry.get_scenario(name, version)
    config = scenario.configure(overrides)
    settings = get_harness_settings()
    out = Path(out_dir or config.out_dir or settings.out_dir)

    result = scenario.run(config)
    bundle = write_bundle(out / config.scenario, result, settings.code_version)
    report = None
    if check:
        report = check_bundle(bundle, scenario.criteria())
    _log.info("Прогон %s@%s завершён: %s", name, scenario.version, bundle.path)
    return RunOutcome(bundle=bundle, report=report)


def check_bundle_path(
    bundle_path: Union[str, Path],
    criteria: Optional[Union[str, Path]] = None,
    registry: Optional[ScenarioRegistry] = None,
) -> CheckReport:
    """Проверяет бандл на диске; без файла критериев берутся встроенные критерии сценария из манифеста."""
    path = Path(bundle_path)
    if path.is_file() and path.name == MANIFEST_NAME:
        path = path.parent
    bundle = load_bundle(path)
    if criteria is not None:
        items: List[Criterion] = load_criteria(criteria)
    else:
        registry = registry or get_global_registry()
        scenario = registry.get_scenario(bundle.scenario, bundle.manifest.get("version"))
        items = [Criterion.model_validate(c) for c in scenario.criteria()]
    return check_bundle(bundle, items)
