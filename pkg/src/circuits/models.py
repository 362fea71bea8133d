# src/circuits/models.py
# --- agent_meta ---
# role: circuits-models
# owner: @backend
# contract: Промежуточное представление схем (Gate, Circuit) и параметры динамики (HamiltonianParams, TrotterSpec)
# last_reviewed: 2026-10-13
# interfaces:
#   - HamiltonianParams
#   - Gate
#   - Circuit (inverse, compose, to_json)
#   - TrotterSpec
# --- /agent_meta ---

from __future__ import annotations

from collections import Counter
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from src.lattice import VertexId

from .errors import InvalidCircuitError

_SELF_INVERSE = {"i", "x", "y", "z", "h", "cnot", "cz"}


class HamiltonianParams(BaseModel):
    """Коэффициенты гамильтониана Z2-калибровочной теории.

    H = -Σ J_E·s_v·A_v - Σ J_M·B_p - Σ h_E·Z_l - Σ λ·X_l.
    Переопределение знака вершины s_v = -1 реализует квенч J_E -> -J_E на одной вершине.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    j_e: float = Field(default=1.0, description="Коэффициент вершинных операторов J_E")
    j_m: float = Field(default=1.0, description="Коэффициент плакеточных операторов J_M")
    h_e: float = Field(default=0.0, description="Электрическое поле h_E")
    lam: float = Field(default=0.0, description="Поперечное поле λ")
    vertex_sign_overrides: Dict[Tuple[int, int], int] = Field(
        default_factory=dict, description="Вершина (row, col) -> знак ±1"
    )

    @field_validator("vertex_sign_overrides", mode="before")
    @classmethod
    def _parse_keys(cls, value: Any) -> Any:
        if not isinstance(value, dict):
            return value
        parsed = {}
        for key, sign in value.items():
            if isinstance(key, str):
                row, col = (int(p) for p in key.strip("() ").split(","))
                key = (row, col)
            parsed[tuple(key)] = sign
        return parsed

    @field_validator("vertex_sign_overrides")
    @classmethod
    def _check_signs(cls, value: Dict[Tuple[int, int], int]) -> Dict[Tuple[int, int], int]:
        for key, sign in value.items():
            if sign not in (1, -1):
                raise ValueError(f"sign override for {key} must be ±1, got {sign}")
        return value

    @field_serializer("vertex_sign_overrides")
    def _dump_keys(self, value: Dict[Tuple[int, int], int]) -> Dict[str, int]:
        return {f"{r},{c}": s for (r, c), s in sorted(value.items())}

    def sign_of(self, vertex: VertexId) -> int:
        return self.vertex_sign_overrides.get(tuple(vertex), 1)

    def with_fields(self, **changes: Any) -> "HamiltonianParams":
        return self.model_copy(update=changes)


class Gate(BaseModel):
    """Гейт: имя из нативного набора или 'pexp' (exp(i·angle·P) по строке Паули)."""
    model_config = ConfigDict(frozen=True)

    name: str
    qubits: Tuple[int, ...]
    params: Tuple[float, ...] = ()
    pauli: Optional[str] = None
    tag: Optional[str] = None

    @model_validator(mode="after")
    def _check(self) -> "Gate":
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"gate {self.name} has duplicate qubits {self.qubits}")
        if self.name == "pexp" and (self.pauli is None or len(self.pauli) != len(self.qubits)):
            raise ValueError("pexp gate needs a Pauli label per qubit")
        return self

    @property
    def is_entangling(self) -> bool:
        return len(self.qubits) == 2

    def inverse(self) -> "Gate":
        name, params = self.name, self.params
        if name in _SELF_INVERSE:
            return self
        if name == "s":
            return self.model_copy(update={"name": "sdg"})
        if name == "sdg":
            return self.model_copy(update={"name": "s"})
        if name in ("rx", "ry", "rz", "pexp"):
            return self.model_copy(update={"params": (-params[0],)})
        if name == "rn":
            return self.model_copy(update={"params": (*params[:3], -params[3])})
        if name == "phased_xz":
            x, z, a = params
            return self.model_copy(update={"params": (-x, -z, a + z)})
        raise InvalidCircuitError(f"no inverse rule for gate '{name}'")

    def to_json(self, layer: int) -> Dict[str, Any]:
        row: Dict[str, Any] = {"layer": layer, "gate": self.name, "targets": list(self.qubits), "params": list(self.params)}
        if self.pauli:
            row["pauli"] = self.pauli
        return row


class Circuit(BaseModel):
    """Упорядоченные слои гейтов на непересекающихся кубитах."""
    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(ge=1)
    layers: Tuple[Tuple[Gate, ...], ...] = ()
    ancillas: Tuple[int, ...] = Field(default=(), description="Анциллы, которые схема возвращает в |0>")
    name: str = ""

    @model_validator(mode="after")
    def _check_layers(self) -> "Circuit":
        for i, layer in enumerate(self.layers):
            seen: set = set()
            for gate in layer:
                if seen & set(gate.qubits):
                    raise InvalidCircuitError(f"layer {i}: qubit used twice")
                if max(gate.qubits) >= self.n_qubits:
                    raise InvalidCircuitError(f"layer {i}: {gate.name}{gate.qubits} outside {self.n_qubits} qubits")
                seen.update(gate.qubits)
        return self

    @property
    def gates(self) -> List[Gate]:
        return [g for layer in self.layers for g in layer]

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def entangling_count(self) -> int:
        return sum(1 for g in self.gates if g.is_entangling)

    def gate_counts(self) -> Dict[str, int]:
        return dict(Counter(g.name for g in self.gates))

    def inverse(self) -> "Circuit":
        layers = tuple(tuple(g.inverse() for g in reversed(layer)) for layer in reversed(self.layers))
        return Circuit(n_qubits=self.n_qubits, layers=layers, ancillas=self.ancillas, name=f"{self.name}^-1")

    def compose(self, other: "Circuit") -> "Circuit":
        """self, затем other; слои конкатенируются."""
        return Circuit(
            n_qubits=max(self.n_qubits, other.n_qubits),
            layers=self.layers + other.layers,
            ancillas=tuple(sorted(set(self.ancillas) | set(other.ancillas))),
            name=f"{self.name}+{other.name}",
        )

    def to_json(self) -> List[Dict[str, Any]]:
        return [g.to_json(i) for i, layer in enumerate(self.layers) for g in layer]


class TrotterSpec(BaseModel):
    """Параметры шага Троттера первого порядка."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    params: HamiltonianParams = Field(default_factory=HamiltonianParams)
    dt: float = Field(gt=0, description="Шаг по времени в единицах 1/J_E")
    n_steps: int = Field(default=1, ge=0)
    mode: Literal["direct", "gate_level"] = "direct"
    field_mask: Optional[Tuple[int, ...]] = Field(
        default=None, description="Рёбра без полевых членов; None - все закреплённые"
    )
    recycle_ancilla: bool = Field(default=True, description="Одна анцилла, если параллельные не помещаются")
    ancilla_offset: int = Field(default=0, ge=0, description="Свободные кубиты между рёбрами и анциллами")
