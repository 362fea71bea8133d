# src/wala/models.py
# --- agent_meta ---
# role: wala-models
# owner: @backend
# contract: Результаты аналитики WALA: ожидаемые средние и решение оптимизации угла
# last_reviewed: 2026-10-13
# interfaces:
#   - WalaExpectations
#   - WalaSolution
# --- /agent_meta ---

from __future__ import annotations

from pydantic import BaseModel, Field


class WalaExpectations(BaseModel):
    """Аналитические средние на состоянии WALA(θ)."""
    a_v: float = Field(default=1.0, description="<A_v>, всегда 1")
    b_p: float = Field(description="<B_p> = sin θ")
    z_bulk: float = Field(description="<Z> на ребре из двух плакеток = cos² θ")
    z_boundary: float = Field(description="<Z> на краевом ребре = cos θ")
    x_link: float = Field(default=0.0, description="<X_l>, всегда 0")


class WalaSolution(BaseModel):
    """Оптимальный угол WALA для конечной решётки."""
    theta: float = Field(ge=0.0, le=1.5707963267948966 + 1e-12, description="θ* в [0, π/2]")
    energy: float = Field(description="E(θ*) в единицах J_E")
    expectations: WalaExpectations
    lx: int
    ly: int
    h_e: float
