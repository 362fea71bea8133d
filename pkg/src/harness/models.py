# src/harness/models.py
# --- agent_meta ---
# role: harness-models
# owner: @backend
# contract: Строка результата, задание сетки и его выход, отчёт проверок
# last_reviewed: 2026-10-15
# interfaces:
#   - CSV_COLUMNS
#   - ResultRow (to_csv, from_csv)
#   - Job, JobOutput
#   - CheckResult, CheckReport
#   - ScenarioResult
# --- /agent_meta ---

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field

CSV_COLUMNS: Tuple[str, ...] = (
    "scenario", "observable", "variant", "h_e", "lam", "dt", "site", "t", "value", "stderr", "stage",
)

Stage = Literal["ideal", "raw", "postselected", "readout", "mitigated"]
_FLOAT_COLUMNS = ("h_e", "lam", "dt", "t", "value", "stderr")


def _fmt(value: float) -> str:
    # repr даёт кратчайшее точное представление и одинаков на всех платформах
    return repr(float(value))


class ResultRow(BaseModel):
    """Одна строка tidy-таблицы наблюдаемой."""
    model_config = ConfigDict(frozen=True)

    scenario: str
    observable: str
    variant: str = ""
    h_e: float = 0.0
    lam: float = 0.0
    dt: float = 0.0
    site: str = ""
    t: float = 0.0
    value: float
    stderr: float = 0.0
    stage: Stage = "ideal"

    def to_csv(self) -> Dict[str, str]:
        data = self.model_dump()
        return {k: (_fmt(data[k]) if k in _FLOAT_COLUMNS else str(data[k])) for k in CSV_COLUMNS}

    @classmethod
    def from_csv(cls, record: Dict[str, str]) -> "ResultRow":
        return cls(**{k: record[k] for k in CSV_COLUMNS})


JobKey = Tuple[Any, ...]


@dataclass
class JobOutput:
    """Строки одного задания и служебные сведения для манифеста (retention, p_eff)."""
    rows: List[ResultRow] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def extend(self, other: "JobOutput") -> None:
        self.rows.extend(other.rows)
        for key, value in other.meta.items():
            if isinstance(value, list) and isinstance(self.meta.get(key), list):
                self.meta[key].extend(value)
            else:
                self.meta[key] = value


@dataclass(frozen=True)
class Job:
    """Точка сетки сценария: ключ определяет порядок слияния результатов."""
    key: JobKey
    run: Callable[[], JobOutput]


class CheckResult(BaseModel):
    name: str
    kind: str
    passed: bool
    margin: float = Field(description="Запас до границы критерия; отрицателен при провале")
    detail: str = ""


class CheckReport(BaseModel):
    bundle: str
    results: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def summary(self) -> Dict[str, Any]:
        return {
            "bundle": self.bundle,
            "passed": self.passed,
            "criteria": [r.model_dump() for r in self.results],
        }


@dataclass
class ScenarioResult:
    """Результат прогона сценария до записи на диск."""
    scenario: str
    version: str
    config: Dict[str, Any]
    rows: List[ResultRow]
    jobs: List[Dict[str, Any]] = field(default_factory=list)
    runtime_seconds: float = 0.0
