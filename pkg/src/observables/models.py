# src/observables/models.py
# --- agent_meta ---
# role: observables-models
# owner: @backend
# contract: Результаты измерений: оценка со стандартной ошибкой, зарядовая запись выстрела, ряды корреляторов
# last_reviewed: 2026-10-14
# interfaces:
#   - Estimate (value, stderr)
#   - ChargeRecord
#   - ConditionalMap
#   - CorrelatorSeries
# --- /agent_meta ---

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

VertexId = Tuple[int, int]


class Estimate(NamedTuple):
    value: float
    stderr: float


@dataclass(frozen=True)
class ChargeRecord:
    """Чётности вершин одного выстрела (±1, порядок lattice.vertices)."""
    parities: Tuple[int, ...]
    violated: Tuple[VertexId, ...]

    @property
    def sector(self) -> int:
        return len(self.violated)


@dataclass(frozen=True)
class ConditionalMap:
    """P(партнёр | опорная вершина возбуждена) и безусловная P(опорная возбуждена).

    partner = None, если опорная вершина ни разу не возбуждена.
    """
    reference: VertexId
    p_reference: Estimate
    partner: Optional[Dict[VertexId, float]]


class CorrelatorSeries(BaseModel):
    """Ряд Re/Im двухвременного коррелятора на сетке t = k·dt."""
    label: str = ""
    times: List[float]
    re: List[float]
    im: List[float]
    re_err: List[float] = Field(default_factory=list)
    im_err: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def _fill_errors(self) -> "CorrelatorSeries":
        n = len(self.times)
        if len(self.re) != n or len(self.im) != n:
            raise ValueError("re/im length differs from the time grid")
        if not self.re_err:
            self.re_err = [0.0] * n
        if not self.im_err:
            self.im_err = [0.0] * n
        return self

    def as_complex(self) -> List[complex]:
        return [complex(r, i) for r, i in zip(self.re, self.im)]
