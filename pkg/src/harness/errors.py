# src/harness/errors.py
# --- agent_meta ---
# role: harness-errors
# owner: @backend
# contract: Иерархия исключений реестра сценариев, прогона, бандла и проверок
# last_reviewed: 2026-10-15
# interfaces:
#   - HarnessError
#   - ScenarioNotFoundError, ScenarioRegistrationError, ScenarioExecutionError
#   - ConfigLoadError, BundleError, CriterionError, MissingObservableError
# --- /agent_meta ---

from __future__ import annotations

from typing import Optional


class HarnessError(Exception):
    """Базовая ошибка исполнителя сценариев."""


class ScenarioNotFoundError(HarnessError):
    def __init__(self, name: str, version: Optional[str] = None):
        version_info = f" version '{version}'" if version else ""
        super().__init__(f"Scenario '{name}'{version_info} not found")
        self.name = name
        self.version = version


class ScenarioRegistrationError(HarnessError):
    def __init__(self, name: str, reason: str):
        super().__init__(f"Failed to register scenario '{name}': {reason}")
        self.name = name
        self.reason = reason


class ScenarioExecutionError(HarnessError):
    def __init__(self, name: str, reason: str):
        super().__init__(f"Scenario '{name}' failed: {reason}")
        self.name = name
        self.reason = reason


class ConfigLoadError(HarnessError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"Cannot load config {path}: {reason}")
        self.path = path
        self.reason = reason


class BundleError(HarnessError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"Bad result bundle {path}: {reason}")
        self.path = path
        self.reason = reason


class CriterionError(HarnessError):
    def __init__(self, name: str, reason: str):
        super().__init__(f"Criterion '{name}': {reason}")
        self.name = name
        self.reason = reason


class MissingObservableError(HarnessError):
    def __init__(self, observable: str, criterion: str):
        super().__init__(f"Criterion '{criterion}' needs observable '{observable}', which has no matching rows")
        self.observable = observable
        self.criterion = criterion
