# src/mitigation/models.py
# --- agent_meta ---
# role: mitigation-models
# owner: @backend
# contract: Модели подавления ошибок: матрицы считывания, критерии постселекции, записи p_eff, результат эха Лошмидта
# last_reviewed: 2026-10-14
# interfaces:
#   - ReadoutModel (confusion, uniform, from_noise)
#   - PostselectCriteria
#   - MitigationRecord
#   - LoschmidtResult
# --- /agent_meta ---

from __future__ import annotations

from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.noise import NoiseModel


class ReadoutModel(BaseModel):
    """По-кубитные (ε0, ε1); матрица [[1−ε0, ε1], [ε0, 1−ε1]] обратима при ε < 0.5."""
    model_config = ConfigDict(frozen=True)

    eps0: List[float]
    eps1: List[float]

    @model_validator(mode="after")
    def _check(self) -> "ReadoutModel":
        if len(self.eps0) != len(self.eps1):
            raise ValueError("eps0 and eps1 must have the same length")
        for q, (e0, e1) in enumerate(zip(self.eps0, self.eps1)):
            if not (0.0 <= e0 < 0.5 and 0.0 <= e1 < 0.5):
                raise ValueError(f"qubit {q}: readout errors must lie in [0, 0.5), got ({e0}, {e1})")
        return self

    @property
    def n_qubits(self) -> int:
        return len(self.eps0)

    @classmethod
    def uniform(cls, n_qubits: int, eps0: float, eps1: float) -> "ReadoutModel":
        return cls(eps0=[eps0] * n_qubits, eps1=[eps1] * n_qubits)

    @classmethod
    def from_noise(cls, model: NoiseModel, n_qubits: int) -> "ReadoutModel":
        e0, e1 = model.readout_arrays(n_qubits)
        return cls(eps0=[float(x) for x in e0], eps1=[float(x) for x in e1])

    def confusion(self, qubit: int) -> np.ndarray:
        """R[измерено, истинно]."""
        e0, e1 = self.eps0[qubit], self.eps1[qubit]
        return np.array([[1.0 - e0, e1], [e0, 1.0 - e1]])


class PostselectCriteria(BaseModel):
    ancilla_zero: bool = Field(default=False, description="Все анциллы в |0>")
    charge_count: Optional[int] = Field(default=None, ge=0, description="Ровно столько нарушенных вершин")


class MitigationRecord(BaseModel):
    """p_eff в одной временной точке и опорные значения наблюдаемой."""
    t: float
    p_eff: float = Field(ge=0.0, le=1.0)
    raw_p_eff: float
    o_initial: float
    o_depolarized: float
    source: Literal["stationary", "loschmidt", "synthetic"] = "stationary"
    flagged: bool = Field(default=False, description="Оценка вышла за [0, 1] и обрезана")


class LoschmidtResult(BaseModel):
    e_exact: float
    e_measured: float
    e_measured_err: float = 0.0
    p_loschmidt: float
    p_eff: float = Field(ge=0.0, le=1.0)
    flagged: bool = False
    retention: float = 1.0
