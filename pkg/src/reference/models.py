# src/reference/models.py
# --- agent_meta ---
# role: reference-models
# owner: @backend
# contract: Результаты проверок качества: WALA против точного основного состояния, ошибка Троттера по dt
# last_reviewed: 2026-10-13
# interfaces:
#   - WalaQuality
#   - TrotterErrorPoint, TrotterErrorScan
# --- /agent_meta ---

from __future__ import annotations

from typing import List

from pydantic import BaseModel, Field


class WalaQuality(BaseModel):
    """Сравнение WALA(θ*) с точным основным состоянием."""
    theta: float
    e_exact: float
    e_wala: float
    relative_energy_error: float = Field(ge=0.0, description="|E_exact − E_WALA| / |E_exact|")
    infidelity: float = Field(description="1 − |<ψ_exact|ψ_WALA>|²")


class TrotterErrorPoint(BaseModel):
    dt: float = Field(gt=0.0)
    n_steps: int = Field(ge=1)
    step_error: float = Field(ge=0.0, description="‖U_T(dt)ψ(t) − e^{−iH dt}ψ(t)‖")
    global_error: float = Field(ge=0.0, description="‖ψ_T(n·dt) − ψ(n·dt)‖")


class TrotterErrorScan(BaseModel):
    t: float
    points: List[TrotterErrorPoint]
    step_slope: float = Field(description="Наклон log(step_error) от log(dt), ожидается ≈ 2")
    global_slope: float = Field(description="Наклон log(global_error) от log(dt), ожидается ≈ 1")
