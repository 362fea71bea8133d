# src/circuits/executor.py
# --- agent_meta ---
# role: circuits-executor
# owner: @backend
# contract: Исполнение схем на движке вектора состояния и троттеровская эволюция по шагам
# last_reviewed: 2026-10-13
# interfaces:
#   - apply_circuit_gate(state, gate) -> StateVector
#   - execute(circuit, state, keep_ancillas=False) -> StateVector
#   - trotter_series(state, lattice, spec) -> list[StateVector]
#   - evolve(state, lattice, spec) -> StateVector
# --- /agent_meta ---

from __future__ import annotations

from typing import List, Optional

from src.lattice import Lattice
from src.state_engine import (
    PauliString,
    StateVector,
    apply_gate,
    apply_pauli_exp,
    extend_zero,
    reduce_zero_qubits,
)
from src.utils import get_logger

from .models import Circuit, Gate, TrotterSpec
from .trotter import build_trotter_step

_log = get_logger(__name__)


def apply_circuit_gate(state: StateVector, gate: Gate) -> StateVector:
    if gate.name == "pexp":
        return apply_pauli_exp(state, PauliString.from_label(gate.pauli, gate.qubits), gate.params[0])
    return apply_gate(state, gate.name, gate.qubits, gate.params)


def execute(circuit: Circuit, state: StateVector, keep_ancillas: bool = False) -> StateVector:
    """Применяет схему.

    Если у состояния меньше кубитов, чем у схемы, недостающие добавляются в |0>;
    без keep_ancillas они отбрасываются в конце с проверкой, что вернулись в |0>.
    """
    n_in = state.n_qubits
    if circuit.n_qubits > n_in:
        state = extend_zero(state, circuit.n_qubits - n_in)
    for gate in circuit.gates:
        state = apply_circuit_gate(state, gate)
    if not keep_ancillas and state.n_qubits > n_in:
        state = reduce_zero_qubits(state, n_in)
    return state


def trotter_series(
    state: StateVector,
    lattice: Lattice,
    spec: TrotterSpec,
    step: Optional[Circuit] = None,
) -> List[StateVector]:
    """Состояния после 0, 1, …, n_steps шагов (включая исходное)."""
    step = step if step is not None else build_trotter_step(lattice, spec)
    states = [state]
    for i in range(spec.n_steps):
        state = execute(step, state)
        states.append(state)
        _log.debug("Шаг Троттера %d/%d выполнен", i + 1, spec.n_steps)
    return states


def evolve(state: StateVector, lattice: Lattice, spec: TrotterSpec) -> StateVector:
    return trotter_series(state, lattice, spec)[-1]
