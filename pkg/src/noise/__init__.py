# src/noise/__init__.py
# --- agent_meta ---
# role: noise
# owner: @backend
# contract: Шум устройства: паули-траектории после 2-кубитных гейтов и ошибки считывания
# last_reviewed: 2026-10-14
# interfaces:
#   - NoiseModel, NoiseSettings
#   - run_trajectories, run_trajectory_series, apply_readout_noise, NoisyExecution
# --- /agent_meta ---

from .config import NoiseSettings, get_noise_settings
from .errors import InvalidTrajectoryCountError, NoiseModelError, ReadoutShapeError
from .models import NoiseModel
from .trajectories import (
    TWO_QUBIT_PAULIS,
    NoisyExecution,
    apply_readout_noise,
    measure_and_reset,
    run_trajectories,
    run_trajectory_series,
)

__all__ = [
    "NoiseSettings",
    "get_noise_settings",
    "NoiseModel",
    "NoisyExecution",
    "TWO_QUBIT_PAULIS",
    "apply_readout_noise",
    "measure_and_reset",
    "run_trajectories",
    "run_trajectory_series",
    "NoiseModelError",
    "InvalidTrajectoryCountError",
    "ReadoutShapeError",
]
