# src/harness/registry.py
# --- agent_meta ---
# role: harness-registry
# owner: @backend
# contract: Версионируемый реестр сценариев с версией по умолчанию и глобальным экземпляром
# last_reviewed: 2026-10-15
# interfaces:
#   - ScenarioInfo
#   - ScenarioRegistry.register(name, scenario_class, version)
#   - ScenarioRegistry.get_scenario(name, version) -> AbstractScenario
#   - ScenarioRegistry.list_scenarios() -> List[ScenarioInfo]
#   - get_global_registry() -> ScenarioRegistry
# --- /agent_meta ---

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Type

from src.utils import get_logger

from .errors import ScenarioNotFoundError, ScenarioRegistrationError
from .interfaces import AbstractScenario


@dataclass
class ScenarioInfo:
    """Информация о зарегистрированном сценарии."""
    name: str
    version: str
    scenario_class: Type[AbstractScenario]
    default_config: Dict[str, Any] = field(default_factory=dict)
    description: str = ""
    is_default: bool = False

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "version": self.version,
            "default": self.is_default,
            "description": self.description,
        }


class ScenarioRegistry:
    """Реестр сценариев.

    default_config версии сливается поверх значений по умолчанию класса
    сценария, поэтому разные версии одного сценария могут отличаться сетками.
    """

    def __init__(self):
        self._log = get_logger(__name__)
        # scenarios[name][version] = ScenarioInfo
        self._scenarios: Dict[str, Dict[str, ScenarioInfo]] = {}
        self._default_versions: Dict[str, str] = {}

    def register(
        self,
        name: str,
        scenario_class: Type[AbstractScenario],
        version: str = "v1",
        *,
        default_config: Optional[Dict[str, Any]] = None,
        description: str = "",
        set_as_default: bool = False,
    ) -> None:
        try:
            if not (isinstance(scenario_class, type) and issubclass(scenario_class, AbstractScenario)):
                raise TypeError(f"{scenario_class!r} is not an AbstractScenario subclass")
            info = ScenarioInfo(
                name=name,
                version=version,
                scenario_class=scenario_class,
                default_config=default_config or {},
                description=description or scenario_class.description,
            )
            self._scenarios.setdefault(name, {})[version] = info
            if set_as_default or name not in self._default_versions:
                self._default_versions[name] = version
            self._log.info("Зарегистрирован сценарий: %s@%s (класс=%s)", name, version, scenario_class.__name__)
        except Exception as e:
            raise ScenarioRegistrationError(name, str(e)) from e

    def _resolve(self, name: str, version: Optional[str]) -> ScenarioInfo:
        if version is None:
            version = self._default_versions.get(name)
            if version is None:
                raise ScenarioNotFoundError(name)
        if name not in self._scenarios or version not in self._scenarios[name]:
            raise ScenarioNotFoundError(name, version)
        return self._scenarios[name][version]

    def get_info(self, name: str, version: Optional[str] = None) -> ScenarioInfo:
        info = self._resolve(name, version)
        info.is_default = self._default_versions.get(name) == info.version
        return info

    def get_scenario(self, name: str, version: Optional[str] = None, **init_kwargs: Any) -> AbstractScenario:
        """Экземпляр сценария с конфигурацией версии по умолчанию."""
        info = self._resolve(name, version)
        try:
            scenario = info.scenario_class(version=info.version, default_config=info.default_config, **init_kwargs)
        except Exception as e:
            self._log.error("Ошибка создания сценария %s@%s: %s", name, info.version, str(e))
            raise ScenarioRegistrationError(name, f"Failed to create scenario: {e}") from e
        self._log.debug("Создан сценарий %s@%s", name, info.version)
        return scenario

    def list_scenarios(self) -> List[ScenarioInfo]:
        """Каталог, отсортированный по имени и версии."""
        out = []
        for name in sorted(self._scenarios):
            for version in sorted(self._scenarios[name]):
                info = self._scenarios[name][version]
                info.is_default = self._default_versions.get(name) == version
                out.append(info)
        return out

    def get_scenario_names(self) -> List[str]:
        return sorted(self._scenarios)

    def get_versions(self, name: str) -> List[str]:
        if name not in self._scenarios:
            raise ScenarioNotFoundError(name)
        return sorted(self._scenarios[name])

    def unregister(self, name: str, version: Optional[str] = None) -> None:
        if name not in self._scenarios:
            raise ScenarioNotFoundError(name)
        if version is None:
            del self._scenarios[name]
            self._default_versions.pop(name, None)
            self._log.info("Удалён сценарий: %s (все версии)", name)
            return
        if version not in self._scenarios[name]:
            raise ScenarioNotFoundError(name, version)
        del self._scenarios[name][version]
        if self._default_versions.get(name) == version:
            remaining = sorted(self._scenarios[name])
            if remaining:
                self._default_versions[name] = remaining[0]
            else:
                del self._default_versions[name]
                del self._scenarios[name]
        self._log.info("Удалён сценарий: %s@%s", name, version)


_global_registry = ScenarioRegistry()


def get_global_registry() -> ScenarioRegistry:
    """Глобальный экземпляр реестра сценариев."""
    return _global_registry
