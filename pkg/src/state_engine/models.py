# src/state_engine/models.py
# --- agent_meta ---
# role: state-engine-models
# owner: @backend
# contract: Типы движка: вектор состояния, строка Паули, таблица выборок
# last_reviewed: 2026-10-12
# interfaces:
#   - StateVector
#   - PauliString
#   - ShotTable
# --- /agent_meta ---

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


@dataclass
class StateVector:
    """Плотный вектор амплитуд; кубит 0 - младший бит индекса."""
    n_qubits: int
    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())


class PauliString(BaseModel):
    """Строка Паули: кубит -> 'X'|'Y'|'Z', вне носителя тождество; знак ±1."""
    model_config = ConfigDict(frozen=True)

    ops: Dict[int, str] = Field(description="Носитель и буквы Паули")
    sign: int = Field(default=1, description="Знак ±1")

    @field_validator("ops")
    @classmethod
    def _check_ops(cls, value: Dict[int, str]) -> Dict[int, str]:
        if not value:
            raise ValueError("Pauli string support must be non-empty")
        out = {}
        for qubit, letter in value.items():
            letter = letter.upper()
            if letter not in ("X", "Y", "Z") or qubit < 0:
                raise ValueError(f"bad Pauli factor {letter} on qubit {qubit}")
            out[int(qubit)] = letter
        return out

    @field_validator("sign")
    @classmethod
    def _check_sign(cls, value: int) -> int:
        if value not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return value

    @classmethod
    def z_on(cls, qubits: Iterable[int], sign: int = 1) -> "PauliString":
        return cls(ops={q: "Z" for q in qubits}, sign=sign)

    @classmethod
    def x_on(cls, qubits: Iterable[int], sign: int = 1) -> "PauliString":
        return cls(ops={q: "X" for q in qubits}, sign=sign)

    @classmethod
    def from_label(cls, label: str, qubits: Sequence[int], sign: int = 1) -> "PauliString":
        return cls(ops=dict(zip(qubits, label)), sign=sign)

    @property
    def support(self) -> List[int]:
        return sorted(self.ops)

    def masks(self) -> Tuple[int, int, int]:
        """(xmask, zmask, число Y): P = i^ny · X^x · Z^z по битам."""
        xmask = zmask = ny = 0
        for qubit, letter in self.ops.items():
            if letter in ("X", "Y"):
                xmask |= 1 << qubit
            if letter in ("Z", "Y"):
                zmask |= 1 << qubit
            if letter == "Y":
                ny += 1
        return xmask, zmask, ny

    def __str__(self) -> str:
        body = " ".join(f"{self.ops[q]}{q}" for q in self.support)
        return ("-" if self.sign < 0 else "") + body


@dataclass(frozen=True)
class ShotTable:
    """Таблица выборок: строки - выстрелы, столбцы - кубиты (0/1, кубит 0 первым).

    Хранит служебные столбцы анцилл, номер траектории каждого выстрела,
    сиды генераторов и долю выстрелов, оставшихся после постселекции.
    """
    bits: np.ndarray
    n_link: int
    ancilla_columns: Tuple[int, ...] = ()
    trajectory: Optional[np.ndarray] = None
    seeds: Tuple[object, ...] = ()
    retention: float = 1.0
    meta: Dict[str, object] = field(default_factory=dict)

    @property
    def n_shots(self) -> int:
        return int(self.bits.shape[0])

    @property
    def n_qubits(self) -> int:
        return int(self.bits.shape[1])

    @property
    def link_bits(self) -> np.ndarray:
        return self.bits[:, : self.n_link]

    @property
    def ancilla_bits(self) -> np.ndarray:
        return self.bits[:, list(self.ancilla_columns)]

    def select(self, mask: np.ndarray) -> "ShotTable":
        """Подмножество строк; retention умножается на долю оставшихся."""
        kept = int(mask.sum())
        frac = kept / self.n_shots if self.n_shots else 0.0
        return replace(
            self,
            bits=self.bits[mask],
            trajectory=None if self.trajectory is None else self.trajectory[mask],
            retention=self.retention * frac,
        )

    def to_strings(self) -> List[str]:
        return ["".join("1" if b else "0" for b in row) for row in self.bits]

    @staticmethod
    def concat(tables: Sequence["ShotTable"]) -> "ShotTable":
        first = tables[0]
        traj = [
            t.trajectory if t.trajectory is not None else np.full(t.n_shots, i, dtype=np.int64)
            for i, t in enumerate(tables)
        ]
        seeds: Tuple[object, ...] = tuple(s for t in tables for s in t.seeds)
        return ShotTable(
            bits=np.concatenate([t.bits for t in tables], axis=0),
            n_link=first.n_link,
            ancilla_columns=first.ancilla_columns,
            trajectory=np.concatenate(traj),
            seeds=seeds,
            retention=first.retention,
            meta=dict(first.meta),
        )
