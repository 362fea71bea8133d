# src/reference/config.py
# --- agent_meta ---
# role: reference-settings
# owner: @backend
# contract: Настройки точного решателя (порог плотной диагонализации, допуски Ланцоша)
# last_reviewed: 2026-10-13
# interfaces:
#   - SolverSettings
#   - get_solver_settings() -> SolverSettings
# dependencies:
#   - pydantic_settings.BaseSettings
# --- /agent_meta ---

from __future__ import annotations

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SolverSettings(BaseSettings):
    """
    Настройки точной диагонализации и точной эволюции.

    До dense_max_qubits кубитов используется плотная матрица (eigh, expm),
    выше - разреженная (eigsh, expm_multiply).

    Environment Variables:
        LGT_SOLVER_DENSE_MAX_QUBITS, LGT_SOLVER_EIGSH_TOL, LGT_SOLVER_EIGSH_MAXITER,
        LGT_SOLVER_RESIDUAL_TOL, LGT_SOLVER_GAP_WARNING, LGT_SOLVER_UNITARITY_TOL
    """
    dense_max_qubits: int = Field(default=12, ge=1)
    eigsh_tol: float = Field(default=1e-12, ge=0.0)
    eigsh_maxiter: int = Field(default=10000, ge=1)
    residual_tol: float = Field(default=1e-8, gt=0.0)
    gap_warning: float = Field(default=1e-6, gt=0.0, description="Порог предупреждения о вырождении")
    unitarity_tol: float = Field(default=1e-8, gt=0.0)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="LGT_SOLVER_",
        extra="ignore",
    )


@lru_cache(maxsize=1)
def get_solver_settings() -> SolverSettings:
    return SolverSettings()
