# src/reference/errors.py
# --- agent_meta ---
# role: reference-errors
# owner: @backend
# contract: Исключения точного решателя
# last_reviewed: 2026-10-13
# interfaces:
#   - SolverError
#   - SolverConvergenceError
#   - InvalidTimeError
# --- /agent_meta ---

from __future__ import annotations


class SolverError(Exception):
    """Базовая ошибка точного решателя."""


class SolverConvergenceError(SolverError):
    """Итерационный решатель не сошёлся или невязка выше допуска."""
    def __init__(self, what: str, detail: str):
        super().__init__(f"{what} did not converge: {detail}")
        self.what = what
        self.detail = detail


class InvalidTimeError(SolverError):
    def __init__(self, t: float):
        super().__init__(f"Evolution time must be >= 0, got {t}")
        self.t = t
