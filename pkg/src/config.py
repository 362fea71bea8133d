# src/config.py
# --- agent_meta ---
# role: application-settings-model
# owner: @backend
# contract: Сводная модель настроек приложения: движок состояний, точный решатель, шум, исполнитель сценариев
# last_reviewed: 2026-10-16
# interfaces:
#   - AppSettings
# --- /agent_meta ---

from pydantic import Field
from pydantic_settings import BaseSettings

from src.harness.config import HarnessSettings
from src.noise.config import NoiseSettings
from src.reference.config import SolverSettings
from src.state_engine.config import EngineSettings


class AppSettings(BaseSettings):
    """
    Главный класс конфигурации приложения.

    Собирает настройки всех подсистем из переменных окружения (префиксы LGT_ENGINE_, LGT_SOLVER_, LGT_NOISE_, LGT_).
    """
    engine: EngineSettings = Field(default_factory=EngineSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    noise: NoiseSettings = Field(default_factory=NoiseSettings)
    harness: HarnessSettings = Field(default_factory=HarnessSettings)
