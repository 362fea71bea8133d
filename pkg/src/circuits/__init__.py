# src/circuits/__init__.py
# --- agent_meta ---
# role: circuits
# owner: @backend
# contract: IR схем и компиляторы: WALA, шаг Троттера, суперпозиция струн, тест Адамара; исполнение на движке
# last_reviewed: 2026-10-13
# interfaces:
#   - build_wala(lattice, theta, mode) -> Circuit
#   - build_trotter_step(lattice, spec) -> Circuit
#   - build_superposition_prep(lattice, s1, s2, branch, mode) -> SuperpositionPrep
#   - build_hadamard_test(a_op, vartheta, phi, ancilla, n_qubits) -> Circuit
#   - execute(circuit, state), trotter_series(state, lattice, spec)
# --- /agent_meta ---

from .builder import CircuitBuilder
from .errors import (
    AncillaBudgetError,
    CircuitError,
    FieldMaskError,
    InvalidCircuitError,
    InvalidPrepError,
    InvalidThetaError,
    UnsupportedOperatorError,
    ZeroNormBranchError,
)
from .executor import apply_circuit_gate, evolve, execute, trotter_series
from .hadamard import build_hadamard_test, estimator_weight, readout_rotation
from .models import Circuit, Gate, HamiltonianParams, TrotterSpec
from .strings import build_pair, build_string, measure_basis
from .superposition import SuperpositionPrep, build_superposition_prep
from .trotter import build_trotter_step, field_rotation, resolve_field_mask, stabilizer_ancilla_plan
from .wala import build_wala

__all__ = [
    "CircuitBuilder",
    "Circuit",
    "Gate",
    "HamiltonianParams",
    "TrotterSpec",
    "build_wala",
    "build_trotter_step",
    "field_rotation",
    "resolve_field_mask",
    "stabilizer_ancilla_plan",
    "build_superposition_prep",
    "SuperpositionPrep",
    "build_hadamard_test",
    "readout_rotation",
    "estimator_weight",
    "build_string",
    "build_pair",
    "measure_basis",
    "apply_circuit_gate",
    "execute",
    "evolve",
    "trotter_series",
    "CircuitError",
    "InvalidCircuitError",
    "InvalidThetaError",
    "AncillaBudgetError",
    "FieldMaskError",
    "InvalidPrepError",
    "ZeroNormBranchError",
    "UnsupportedOperatorError",
]
