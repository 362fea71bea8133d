# src/harness/config.py
# --- agent_meta ---
# role: harness-settings
# owner: @backend
# contract: Настройки исполнителя сценариев (пул потоков, каталог результатов, версия кода) и загрузка файлов конфигурации
# last_reviewed: 2026-10-15
# interfaces:
#   - HarnessSettings
#   - get_harness_settings() -> HarnessSettings
#   - read_structured(path) -> Any
#   - load_config_file(path) -> dict
# dependencies:
#   - pydantic_settings.BaseSettings
#   - PyYAML (yaml.safe_load для .yaml/.yml)
# --- /agent_meta ---

from __future__ import annotations

import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Union

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigLoadError

CODE_VERSION = "0.1.0"


class HarnessSettings(BaseSettings):
    """
    Настройки прогона сценариев.

    Environment Variables:
        LGT_THREADS: верхняя граница пула потоков (по умолчанию число CPU)
        LGT_OUT_DIR: каталог, куда пишутся бандлы результатов
        LGT_CODE_VERSION: версия кода в манифесте
    """
    threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    out_dir: str = Field(default="results")
    code_version: str = Field(default=CODE_VERSION)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="LGT_",
        extra="ignore",
    )


@lru_cache(maxsize=1)
def get_harness_settings() -> HarnessSettings:
    return HarnessSettings()


def read_structured(path: Union[str, Path]) -> Any:
    """Читает JSON или YAML (по суффиксу .yaml/.yml) без проверки формы."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigLoadError(str(path), str(e)) from e
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ConfigLoadError(str(path), f"parse error: {e}") from e
    return data


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    data = read_structured(path)
    if not isinstance(data, dict):
        raise ConfigLoadError(str(path), "top-level object must be a mapping")
    return data
