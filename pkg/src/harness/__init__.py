# src/harness/__init__.py
# --- agent_meta ---
# role: harness
# owner: @backend
# contract: Исполнитель сценариев: конфигурация эксперимента, реестр, задания, бандлы результатов и критерии приёмки
# last_reviewed: 2026-10-16
# interfaces:
#   - ExperimentConfig, PrepSpec, MitigationOptions
#   - ScenarioRegistry, get_global_registry, AbstractScenario
#   - run_experiment, list_scenarios, check_bundle_path
#   - write_bundle, load_bundle, verify_integrity, check_bundle, load_criteria
# --- /agent_meta ---

from .bootstrap import register_builtin_scenarios
from .bundle import ResultBundle, load_bundle, verify_integrity, write_bundle
from .checks import Criterion, check_bundle, load_criteria
from .config import CODE_VERSION, HarnessSettings, get_harness_settings, load_config_file
from .errors import (
    BundleError,
    ConfigLoadError,
    CriterionError,
    HarnessError,
    MissingObservableError,
    ScenarioExecutionError,
    ScenarioNotFoundError,
    ScenarioRegistrationError,
)
from .interfaces import AbstractScenario
from .models import CSV_COLUMNS, CheckReport, CheckResult, Job, JobOutput, ResultRow, ScenarioResult
from .options import ExperimentConfig, MitigationOptions, PrepSpec, merge_config
from .registry import ScenarioInfo, ScenarioRegistry, get_global_registry
from .runner import JobRunner
from .service import RunOutcome, check_bundle_path, list_scenarios, run_experiment

# Автоматическая регистрация встроенных сценариев при импорте пакета
try:
    register_builtin_scenarios()
except HarnessError:
    pass

__all__ = [
    "AbstractScenario",
    "BundleError",
    "CODE_VERSION",
    "CSV_COLUMNS",
    "CheckReport",
    "CheckResult",
    "ConfigLoadError",
    "Criterion",
    "CriterionError",
    "ExperimentConfig",
    "HarnessError",
    "HarnessSettings",
    "Job",
    "JobOutput",
    "JobRunner",
    "MissingObservableError",
    "MitigationOptions",
    "PrepSpec",
    "ResultBundle",
    "ResultRow",
    "RunOutcome",
    "ScenarioExecutionError",
    "ScenarioInfo",
    "ScenarioNotFoundError",
    "ScenarioRegistrationError",
    "ScenarioRegistry",
    "ScenarioResult",
    "check_bundle",
    "check_bundle_path",
    "get_global_registry",
    "get_harness_settings",
    "list_scenarios",
    "load_bundle",
    "load_config_file",
    "load_criteria",
    "merge_config",
    "register_builtin_scenarios",
    "run_experiment",
    "verify_integrity",
    "write_bundle",
]
