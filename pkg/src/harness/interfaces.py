# src/harness/interfaces.py
# --- agent_meta ---
# role: harness-scenario-base
# owner: @backend
# contract: Абстрактный сценарий со стандартным workflow: слияние умолчаний -> задания -> исполнение -> сбор строк
# last_reviewed: 2026-10-15
# interfaces:
#   - AbstractScenario (configure, run, build_jobs, criteria)
# --- /agent_meta ---

from __future__ import annotations

import time
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Dict, List, Optional

from src.lattice import Lattice, build_lattice
from src.utils import get_logger

from .errors import HarnessError, ScenarioExecutionError
from .models import Job, ScenarioResult
from .options import ExperimentConfig, merge_config
from .runner import JobRunner


class AbstractScenario(ABC):
    """Базовый класс сценариев.

    Наследник задаёт name, base_config() и build_jobs(); остальное
    (валидация конфигурации, пул потоков, сбор строк и метаданных заданий,
    логирование и обёртка ошибок) общее.
    """

    name: ClassVar[str] = ""
    description: ClassVar[str] = ""

    def __init__(
        self,
        *,
        version: str = "v1",
        default_config: Optional[Dict[str, Any]] = None,
        runner: Optional[JobRunner] = None,
    ) -> None:
        self.version = version
        self._defaults = merge_config(self.base_config(), default_config or {})
        self._runner = runner
        self._log = get_logger(f"{self.__class__.__module__}.{self.__class__.__name__}")

    @abstractmethod
    def base_config(self) -> Dict[str, Any]:
        """Значения конфигурации по умолчанию (подписи к рисункам)."""
        ...

    @abstractmethod
    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        """Задания сетки; каждое возвращает JobOutput."""
        ...

    def criteria(self) -> List[Dict[str, Any]]:
        """Встроенные критерии приёмки для `run --check`."""
        return []

    @property
    def defaults(self) -> Dict[str, Any]:
        return dict(self._defaults)

    def configure(self, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
        """Сливает пользовательский словарь с умолчаниями и валидирует схему."""
        merged = merge_config(self._defaults, overrides or {})
        merged["scenario"] = self.name
        merged["version"] = self.version
        return ExperimentConfig.model_validate(merged)

    def run(self, config: ExperimentConfig) -> ScenarioResult:
        """Стандартный workflow прогона."""
        try:
            self._log.info("Запуск сценария %s@%s, сид=%d", self.name, self.version, config.seed)
            start = time.perf_counter()
            lattice = build_lattice(config.lattice)
            jobs = self.build_jobs(config, lattice)
            runner = self._runner or JobRunner()
            records = runner.execute(jobs)

            rows, job_meta = [], []
            for job, output, elapsed in records:
                rows.extend(output.rows)
                job_meta.append({"key": [str(k) for k in job.key], "runtime_seconds": elapsed, **output.meta})

            runtime = time.perf_counter() - start
            self._log.info("Сценарий %s завершён: %d строк за %.2f с", self.name, len(rows), runtime)
            return ScenarioResult(
                scenario=self.name,
                version=self.version,
                config=config.model_dump(mode="json"),
                rows=rows,
                jobs=job_meta,
                runtime_seconds=runtime,
            )
        except HarnessError:
            raise
        except Exception as e:
            self._log.error("Ошибка сценария %s: %s", self.name, str(e))
            raise ScenarioExecutionError(self.name, str(e)) from e
