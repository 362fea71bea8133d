# src/noise/config.py
# --- agent_meta ---
# role: noise-settings
# owner: @backend
# contract: Параметры шума по умолчанию (деполяризация после CZ, ошибки считывания, число траекторий)
# last_reviewed: 2026-10-14
# interfaces:
#   - NoiseSettings
#   - get_noise_settings() -> NoiseSettings
# dependencies:
#   - pydantic_settings.BaseSettings
# --- /agent_meta ---

from __future__ import annotations

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class NoiseSettings(BaseSettings):
    """
    Значения по умолчанию для модели шума траекторий.

    Environment Variables:
        LGT_NOISE_P2: вероятность двухкубитной деполяризации после запутывающего гейта
        LGT_NOISE_EPS0, LGT_NOISE_EPS1: вероятности ошибки считывания |0> и |1>
        LGT_NOISE_N_TRAJ, LGT_NOISE_SHOTS_PER_TRAJ: разбиение выборки
        LGT_NOISE_WORKERS: число потоков для траекторий
    """
    p2: float = Field(default=0.007, ge=0.0, lt=1.0)
    eps0: float = Field(default=0.006, ge=0.0, lt=0.5)
    eps1: float = Field(default=0.02, ge=0.0, lt=0.5)
    n_traj: int = Field(default=30, ge=1)
    shots_per_traj: int = Field(default=400, ge=1)
    workers: int = Field(default=1, ge=1)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="LGT_NOISE_",
        extra="ignore",
    )


@lru_cache(maxsize=1)
def get_noise_settings() -> NoiseSettings:
    return NoiseSettings()
