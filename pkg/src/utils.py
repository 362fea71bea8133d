# src/utils.py
# --- agent_meta ---
# role: utility-functions
# owner: @backend
# contract: Общие утилиты пакета: настройка логирования и замер времени выполнения.
# last_reviewed: 2026-10-12
# interfaces:
#   - init_logging_from_env()
#   - get_logger()
#   - timed(logger, label)
# --- /agent_meta ---

from __future__ import annotations

import logging
import os
import time
from contextlib import contextmanager
from typing import Iterator, List


def init_logging_from_env() -> None:
    """Инициализирует конфигурацию логирования на основе переменных окружения."""
    log_level = os.getenv("LOG_LEVEL", "INFO").upper()
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def get_logger(name: str = "lgt") -> logging.Logger:
    """Возвращает инстанс логгера."""
    return logging.getLogger(name)


@contextmanager
def timed(logger: logging.Logger, label: str) -> Iterator[List[float]]:
    """Замеряет время блока и пишет его в DEBUG.

    Отдаёт список из одного элемента, куда по выходу кладётся длительность в секундах,
    чтобы вызывающий код мог сохранить её (например, в манифест).
    """
    box: List[float] = [0.0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = time.perf_counter() - start
        logger.debug("%s: %.3f с", label, box[0])
