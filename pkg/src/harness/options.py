# src/harness/options.py
# --- agent_meta ---
# role: harness-options
# owner: @backend
# contract: Схема конфигурации эксперимента: решётка, параметры и сетки, подготовка, шум, стадии смягчения, сиды
# last_reviewed: 2026-10-15
# interfaces:
#   - PrepSpec
#   - MitigationOptions
#   - ExperimentConfig (grid, params_at, trotter_spec, seed_for)
#   - merge_config(defaults, overrides) -> dict
# --- /agent_meta ---

from __future__ import annotations

import hashlib
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.circuits import HamiltonianParams, TrotterSpec
from src.lattice import LatticeSpec, LinkRef, PathSpec
from src.noise import NoiseModel

PrepKind = Literal["wala", "wala_pair", "wala_superposition", "wala_string", "toric", "polarized"]

_PREP_ALIASES = {
    "wala+pair": "wala_pair",
    "wala+superposition": "wala_superposition",
    "wala+string": "wala_string",
}


class PrepSpec(BaseModel):
    """Описание начального состояния.

    theta=None означает оптимальный θ* для текущего h_E. Для пары, струны и
    суперпозиции пустые ссылки заменяются геометрией решётки по умолчанию.
    """
    model_config = ConfigDict(extra="forbid")

    kind: PrepKind = Field(default="wala", description="Тип подготовки")
    theta: Optional[float] = Field(default=None, ge=0.0, le=3.141592653589793, description="Фиксированный угол WALA")
    link: Optional[LinkRef] = Field(default=None, description="Ребро пары для wala_pair")
    path: Optional[PathSpec] = Field(default=None, description="Путь X-струны для wala_string")
    s1: Optional[PathSpec] = Field(default=None, description="Первая струна суперпозиции")
    s2: Optional[PathSpec] = Field(default=None, description="Вторая струна суперпозиции")
    branch: Literal["+", "-"] = Field(default="+", description="Ветка ψ±")
    mode: Literal["direct", "gate_level"] = Field(default="direct", description="Способ подготовки суперпозиции")

    @field_validator("kind", mode="before")
    @classmethod
    def _alias(cls, value: Any) -> Any:
        if isinstance(value, str):
            return _PREP_ALIASES.get(value, value)
        return value


class MitigationOptions(BaseModel):
    """Включение стадий смягчения для зашумлённых прогонов."""
    model_config = ConfigDict(extra="forbid")

    postselect: bool = Field(default=True, description="Постселекция по анциллам и сектору зарядов")
    readout: bool = Field(default=True, description="Инверсия матрицы считывания")
    rescale: bool = Field(default=True, description="Перемасштабирование по глобальной деполяризации")


class ExperimentConfig(BaseModel):
    """Полная конфигурация одного прогона сценария.

    Каждая пара (h_E, λ) из сеток задаёт отдельное задание; параметры сценария,
    не вошедшие в общую схему, лежат в extra.
    """
    model_config = ConfigDict(extra="forbid")

    scenario: str = Field(description="Имя сценария из каталога")
    version: Optional[str] = Field(default=None, description="Версия сценария; по умолчанию - версия по умолчанию")
    lattice: LatticeSpec = Field(description="Геометрия решётки")
    params: HamiltonianParams = Field(default_factory=HamiltonianParams)
    h_e_grid: List[float] = Field(default_factory=lambda: [0.0], min_length=1)
    lam_grid: List[float] = Field(default_factory=lambda: [0.0], min_length=1)
    dt: float = Field(default=0.3, gt=0.0)
    n_steps: int = Field(default=9, ge=0)
    mode: Literal["direct", "gate_level"] = Field(default="direct", description="Способ компиляции шага Троттера")
    prep: PrepSpec = Field(default_factory=PrepSpec)
    noise: Optional[NoiseModel] = Field(default=None, description="Модель шума; None - бесшумный прогон")
    n_traj: Optional[int] = Field(default=None, ge=1)
    shots_per_traj: Optional[int] = Field(default=None, ge=1)
    mitigation: MitigationOptions = Field(default_factory=MitigationOptions)
    seed: int = Field(ge=0, description="Главный сид прогона")
    out_dir: Optional[str] = Field(default=None)
    extra: Dict[str, Any] = Field(default_factory=dict)

    @property
    def grid(self) -> List[Tuple[float, float]]:
        return [(h, lam) for lam in self.lam_grid for h in self.h_e_grid]

    @property
    def times(self) -> List[float]:
        return [k * self.dt for k in range(self.n_steps + 1)]

    def params_at(self, h_e: float, lam: float) -> HamiltonianParams:
        return self.params.with_fields(h_e=float(h_e), lam=float(lam))

    def trotter_spec(
        self,
        h_e: float,
        lam: float,
        *,
        dt: Optional[float] = None,
        n_steps: Optional[int] = None,
        mode: Optional[str] = None,
        field_mask: Optional[Tuple[int, ...]] = None,
        params: Optional[HamiltonianParams] = None,
    ) -> TrotterSpec:
        """Шаг Троттера для точки сетки; шумный прогон всегда компилируется в gate_level."""
        if mode is None:
            mode = "gate_level" if self.noise is not None else self.mode
        return TrotterSpec(
            params=params or self.params_at(h_e, lam),
            dt=self.dt if dt is None else dt,
            n_steps=self.n_steps if n_steps is None else n_steps,
            mode=mode,
            field_mask=field_mask,
        )

    def seed_for(self, *key: Any) -> int:
        """Детерминированный сид задания из главного сида и ключа."""
        digest = hashlib.sha256(f"{self.seed}|{key!r}".encode("utf-8")).digest()
        return int.from_bytes(digest[:4], "little")

    def noise_for(self, *key: Any) -> Optional[NoiseModel]:
        if self.noise is None:
            return None
        return self.noise.model_copy(update={"master_seed": self.seed_for("noise", *key)})

    def option(self, name: str, default: Any = None) -> Any:
        return self.extra.get(name, default)


def merge_config(defaults: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Рекурсивное слияние: вложенные словари объединяются, остальное берётся из overrides."""
    merged = dict(defaults)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = value
    return merged
