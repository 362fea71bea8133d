# src/noise/models.py
# --- agent_meta ---
# role: noise-models
# owner: @backend
# contract: NoiseModel - p2 после запутывающих гейтов, по-кубитные (ε0, ε1) считывания, главный сид
# last_reviewed: 2026-10-14
# interfaces:
#   - NoiseModel (readout_pair, readout_arrays, rng_for, from_settings, noiseless)
# --- /agent_meta ---

from __future__ import annotations

from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .config import NoiseSettings, get_noise_settings


class NoiseModel(BaseModel):
    """Модель шума траекторий.

    per_qubit переопределяет (ε0, ε1) для отдельных кубитов; остальные берут eps0/eps1.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    p2: float = Field(default=0.007, ge=0.0, lt=1.0, description="Вероятность паули-ошибки после 2-кубитного гейта")
    eps0: float = Field(default=0.006, ge=0.0, lt=0.5, description="P(1|0)")
    eps1: float = Field(default=0.02, ge=0.0, lt=0.5, description="P(0|1)")
    per_qubit: Dict[int, Tuple[float, float]] = Field(default_factory=dict)
    master_seed: int = Field(default=0, ge=0)

    @field_validator("per_qubit")
    @classmethod
    def _check_pairs(cls, value: Dict[int, Tuple[float, float]]) -> Dict[int, Tuple[float, float]]:
        for q, (e0, e1) in value.items():
            if q < 0:
                raise ValueError(f"negative qubit index {q}")
            if not (0.0 <= e0 < 0.5 and 0.0 <= e1 < 0.5):
                raise ValueError(f"readout errors on qubit {q} must lie in [0, 0.5), got ({e0}, {e1})")
        return value

    @classmethod
    def from_settings(cls, settings: Optional[NoiseSettings] = None, master_seed: int = 0) -> "NoiseModel":
        settings = settings or get_noise_settings()
        return cls(p2=settings.p2, eps0=settings.eps0, eps1=settings.eps1, master_seed=master_seed)

    @classmethod
    def noiseless(cls, master_seed: int = 0) -> "NoiseModel":
        return cls(p2=0.0, eps0=0.0, eps1=0.0, master_seed=master_seed)

    @property
    def has_gate_noise(self) -> bool:
        return self.p2 > 0.0

    def readout_pair(self, qubit: int) -> Tuple[float, float]:
        return self.per_qubit.get(qubit, (self.eps0, self.eps1))

    def readout_arrays(self, n_qubits: int) -> Tuple[np.ndarray, np.ndarray]:
        pairs = [self.readout_pair(q) for q in range(n_qubits)]
        return np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs])

    def rng_for(self, index: int) -> np.random.Generator:
        """Независимый генератор траектории, определяемый (master_seed, index)."""
        return np.random.default_rng([self.master_seed, index])
