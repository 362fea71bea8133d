# src/state_engine/config.py
# --- agent_meta ---
# role: state-engine-settings
# owner: @backend
# contract: Настройки движка вектора состояния (предел числа кубитов)
# last_reviewed: 2026-10-12
# interfaces:
#   - EngineSettings
#   - get_engine_settings() -> EngineSettings
# dependencies:
#   - pydantic_settings.BaseSettings
# --- /agent_meta ---

from __future__ import annotations

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class EngineSettings(BaseSettings):
    """
    Настройки плотного симулятора вектора состояния.

    26 кубитов - около 1 ГиБ комплексных амплитуд двойной точности; этого хватает
    на 17 рёбер решётки 3x4, закреплённые рёбра, анциллу теста Адамара
    и одну переиспользуемую анциллу стабилизаторов.

    Environment Variables:
        LGT_ENGINE_MAX_QUBITS: предел числа кубитов (по умолчанию 26)
    """
    max_qubits: int = Field(default=26, ge=1, le=34, description="Предел числа кубитов")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="LGT_ENGINE_",
        extra="ignore",
    )


@lru_cache(maxsize=1)
def get_engine_settings() -> EngineSettings:
    return EngineSettings()
