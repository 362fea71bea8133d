# src/circuits/hadamard.py
# --- agent_meta ---
# role: circuits-hadamard
# owner: @backend
# contract: Фрагменты теста Адамара: подготовка анциллы |η(ϑ,φ)>, управляемый A, поворот B⊗X_a к Z-базису
# last_reviewed: 2026-10-13
# interfaces:
#   - build_hadamard_test(a_op, vartheta, phi, ancilla, n_qubits) -> Circuit
#   - readout_rotation(b_op, ancilla, n_qubits) -> Circuit
#   - estimator_weight(vartheta, phi) -> (float, float)
# --- /agent_meta ---

from __future__ import annotations

import math
from typing import Tuple

from src.state_engine import PauliString

from .builder import CircuitBuilder
from .errors import UnsupportedOperatorError
from .models import Circuit


def build_hadamard_test(a_op: PauliString, vartheta: float, phi: float, ancilla: int, n_qubits: int) -> Circuit:
    """Ry(ϑ), Rz(φ) на анцилле, затем controlled-A (CZ для Z_l, CNOT для X_l).

    После эволюции U системы среднее B⊗X_a равно
    sin ϑ·cos φ·Re<B(t)A(0)> − sin ϑ·sin φ·Im<B(t)A(0)>.
    """
    if len(a_op.ops) != 1 or a_op.sign != 1:
        raise UnsupportedOperatorError(str(a_op))
    (qubit, letter), = a_op.ops.items()
    if letter not in ("X", "Z"):
        raise UnsupportedOperatorError(str(a_op))
    builder = CircuitBuilder()
    builder.add("ry", [ancilla], [vartheta]).add("rz", [ancilla], [phi])
    builder.add("cz" if letter == "Z" else "cnot", [ancilla, qubit], tag="hadamard")
    return builder.build(max(n_qubits, ancilla + 1, qubit + 1), name="hadamard_test")


def readout_rotation(b_op: PauliString, ancilla: int, n_qubits: int) -> Circuit:
    """Поворачивает носитель B и анциллу (X) так, что B⊗X_a читается как чётность Z-битов."""
    builder = CircuitBuilder()
    for qubit, letter in sorted(b_op.ops.items()):
        if letter == "X":
            builder.add("h", [qubit])
        elif letter == "Y":
            builder.add("sdg", [qubit]).add("h", [qubit])
    builder.add("h", [ancilla])
    return builder.build(n_qubits, name="hadamard_readout")


def estimator_weight(vartheta: float, phi: float) -> Tuple[float, float]:
    """Коэффициенты (при Re, при Im) в среднем B⊗X_a."""
    s = math.sin(vartheta)
    return s * math.cos(phi), -s * math.sin(phi)
