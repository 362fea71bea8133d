# src/noise/errors.py
# --- agent_meta ---
# role: noise-errors
# owner: @backend
# contract: Исключения модели шума
# last_reviewed: 2026-10-14
# interfaces:
#   - NoiseModelError
#   - InvalidTrajectoryCountError
#   - ReadoutShapeError
# --- /agent_meta ---

from __future__ import annotations


class NoiseModelError(Exception):
    """Базовая ошибка модели шума."""


class InvalidTrajectoryCountError(NoiseModelError):
    def __init__(self, n_traj: int, shots_per_traj: int):
        super().__init__(f"Need n_traj >= 1 and shots_per_traj >= 1, got {n_traj} x {shots_per_traj}")
        self.n_traj = n_traj
        self.shots_per_traj = shots_per_traj


class ReadoutShapeError(NoiseModelError):
    """Вектор вероятностей считывания не совпадает с числом столбцов таблицы."""
    def __init__(self, expected: int, got: int):
        super().__init__(f"Readout error vector has {got} entries, table has {expected} qubits")
        self.expected = expected
        self.got = got
