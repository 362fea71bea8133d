# src/state_engine/__init__.py
# --- agent_meta ---
# role: state-engine
# owner: @backend
# contract: Публичный API плотного симулятора вектора состояния
# last_reviewed: 2026-10-12
# interfaces:
#   - init_zero, apply_gate, apply_pauli_exp, expectation, sample, project, overlap
#   - StateVector, PauliString, ShotTable, EngineSettings
# --- /agent_meta ---

from .config import EngineSettings, get_engine_settings
from .errors import (
    DimensionMismatchError,
    InvalidTargetsError,
    NonZeroQubitError,
    QubitCapExceededError,
    StateEngineError,
    UnknownGateError,
    ZeroProbabilityError,
)
from .gates import PAULI_MATRICES, gate_arity, gate_matrix
from .models import PauliString, ShotTable, StateVector
from .statevector import (
    apply_gate,
    apply_matrix,
    apply_pauli_exp,
    basis_state,
    expectation,
    extend_zero,
    fidelity,
    from_amplitudes,
    indices_to_bits,
    init_zero,
    matrix_element,
    overlap,
    pauli_apply,
    probabilities,
    project,
    reduce_zero_qubits,
    sample,
)

__all__ = [
    "EngineSettings",
    "get_engine_settings",
    "StateVector",
    "PauliString",
    "ShotTable",
    "PAULI_MATRICES",
    "gate_arity",
    "gate_matrix",
    "init_zero",
    "basis_state",
    "from_amplitudes",
    "apply_gate",
    "apply_matrix",
    "apply_pauli_exp",
    "pauli_apply",
    "expectation",
    "matrix_element",
    "probabilities",
    "indices_to_bits",
    "sample",
    "project",
    "overlap",
    "fidelity",
    "extend_zero",
    "reduce_zero_qubits",
    "StateEngineError",
    "QubitCapExceededError",
    "InvalidTargetsError",
    "UnknownGateError",
    "ZeroProbabilityError",
    "DimensionMismatchError",
    "NonZeroQubitError",
]
