# src/circuits/superposition.py
# --- agent_meta ---
# role: circuits-superposition
# owner: @backend
# contract: Подготовка |ψ±> ∝ (X_s1 ± X_s2)|ψ0> прямой арифметикой или анцилльной схемой с проекцией
# last_reviewed: 2026-10-13
# interfaces:
#   - build_superposition_prep(lattice, s1, s2, branch, mode) -> SuperpositionPrep
#   - SuperpositionPrep.prepare(psi0) -> StateVector
# --- /agent_meta ---

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence

import numpy as np

from src.lattice import Lattice, PathSpec, manhattan_distance, path_endpoints
from src.lattice.errors import InvalidPathError
from src.state_engine import (
    PauliString,
    StateVector,
    ZeroProbabilityError,
    apply_gate,
    extend_zero,
    pauli_apply,
    project,
    reduce_zero_qubits,
)
from src.utils import get_logger

from .builder import CircuitBuilder
from .errors import InvalidPrepError, ZeroNormBranchError
from .executor import execute
from .models import Circuit

_log = get_logger(__name__)

Branch = Literal["+", "-"]


@dataclass(frozen=True)
class SuperpositionPrep:
    """Процедура подготовки одной ветки суперпозиции двух X-струн.

    gate_level: анцилла в H, X, CNOT на s1, X, CNOT на s2, H; исход 0 даёт ψ+,
    исход 1 даёт ψ-. После проекции анцилла возвращается в |0> и отбрасывается.
    """
    mode: Literal["direct", "gate_level"]
    branch: Branch
    s1: tuple
    s2: tuple
    n_links: int
    circuit: Optional[Circuit] = None
    ancilla: Optional[int] = None

    @property
    def outcome(self) -> int:
        return 0 if self.branch == "+" else 1

    def prepare(self, psi0: StateVector) -> StateVector:
        if self.mode == "direct":
            a = pauli_apply(psi0, PauliString.x_on(self.s1)).amplitudes
            b = pauli_apply(psi0, PauliString.x_on(self.s2)).amplitudes
            amps = a + b if self.branch == "+" else a - b
            norm = float(np.linalg.norm(amps))
            if norm < 1e-12:
                raise ZeroNormBranchError(self.branch)
            return StateVector(psi0.n_qubits, amps / norm)

        n_in = psi0.n_qubits
        state = execute(self.circuit, extend_zero(psi0, self.circuit.n_qubits - n_in), keep_ancillas=True)
        try:
            probability, state = project(state, self.ancilla, self.outcome)
        except ZeroProbabilityError as e:
            raise ZeroNormBranchError(self.branch) from e
        if self.outcome == 1:
            state = apply_gate(state, "x", [self.ancilla])
        _log.debug("Ветка %s выбрана с вероятностью %.4f", self.branch, probability)
        return reduce_zero_qubits(state, n_in)


def _path_ids(lattice: Lattice, path: PathSpec | Sequence[int]) -> List[int]:
    refs = path.links if isinstance(path, PathSpec) else list(path)
    return [lattice.resolve(r) for r in refs]


def _check_pair(lattice: Lattice, path: PathSpec | Sequence[int], name: str) -> None:
    try:
        ends = path_endpoints(lattice, path)
    except InvalidPathError as e:
        raise InvalidPrepError(f"{name}: {e.reason}") from e
    if len(ends) != 2:
        raise InvalidPrepError(f"{name} violates {len(ends)} vertices, expected 2")
    if manhattan_distance(*ends) != 2:
        _log.warning("Путь %s создаёт заряды на расстоянии %d, а не 2", name, manhattan_distance(*ends))


def build_superposition_prep(
    lattice: Lattice,
    s1: PathSpec | Sequence[int],
    s2: PathSpec | Sequence[int],
    branch: Branch = "+",
    mode: Literal["direct", "gate_level"] = "direct",
) -> SuperpositionPrep:
    if branch not in ("+", "-"):
        raise InvalidPrepError(f"unknown branch '{branch}'")
    _check_pair(lattice, s1, "s1")
    _check_pair(lattice, s2, "s2")
    ids1, ids2 = _path_ids(lattice, s1), _path_ids(lattice, s2)
    if mode == "direct":
        return SuperpositionPrep("direct", branch, tuple(ids1), tuple(ids2), lattice.n_links)

    a = lattice.n_links
    builder = CircuitBuilder()
    builder.add("h", [a]).add("x", [a])
    for q in ids1:
        builder.add("cnot", [a, q], tag="superposition")
    builder.add("x", [a])
    for q in ids2:
        builder.add("cnot", [a, q], tag="superposition")
    builder.add("h", [a])
    circuit = builder.build(a + 1, name="superposition")
    return SuperpositionPrep("gate_level", branch, tuple(ids1), tuple(ids2), lattice.n_links, circuit, a)
