# src/state_engine/gates.py
# --- agent_meta ---
# role: state-engine-gates
# owner: @backend
# contract: Унитарные матрицы нативного набора гейтов
# last_reviewed: 2026-10-12
# interfaces:
#   - gate_matrix(name, params) -> np.ndarray
#   - gate_arity(name) -> int
#   - NATIVE_GATES
# --- /agent_meta ---

from __future__ import annotations

from typing import Callable, Dict, Sequence, Tuple

import numpy as np

from .errors import UnknownGateError

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULI_MATRICES: Dict[str, np.ndarray] = {"I": _I, "X": _X, "Y": _Y, "Z": _Z}


def _rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def _rn(nx: float, ny: float, nz: float, angle: float) -> np.ndarray:
    """exp(-i·angle/2·n·σ) для единичной оси n."""
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return c * _I - 1j * s * (nx * _X + ny * _Y + nz * _Z)


def _zpow(t: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * np.pi * t)]).astype(complex)


def _xpow(t: float) -> np.ndarray:
    g = np.exp(0.5j * np.pi * t)
    c, s = np.cos(np.pi * t / 2), np.sin(np.pi * t / 2)
    return g * np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _phased_xz(x_exponent: float, z_exponent: float, axis_phase_exponent: float) -> np.ndarray:
    # Z^z · Z^a · X^x · Z^-a
    a = axis_phase_exponent
    return _zpow(z_exponent) @ _zpow(a) @ _xpow(x_exponent) @ _zpow(-a)


_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_CZ = np.diag([1, 1, 1, -1]).astype(complex)
_S = np.diag([1, 1j]).astype(complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

# имя -> (арность, число параметров, фабрика)
NATIVE_GATES: Dict[str, Tuple[int, int, Callable[..., np.ndarray]]] = {
    "i": (1, 0, lambda: _I),
    "x": (1, 0, lambda: _X),
    "y": (1, 0, lambda: _Y),
    "z": (1, 0, lambda: _Z),
    "h": (1, 0, lambda: _H),
    "s": (1, 0, lambda: _S),
    "sdg": (1, 0, lambda: _S.conj().T),
    "rx": (1, 1, _rx),
    "ry": (1, 1, _ry),
    "rz": (1, 1, _rz),
    "rn": (1, 4, _rn),
    "phased_xz": (1, 3, _phased_xz),
    "cnot": (2, 0, lambda: _CNOT),
    "cz": (2, 0, lambda: _CZ),
}


def gate_arity(name: str) -> int:
    if name not in NATIVE_GATES:
        raise UnknownGateError(name)
    return NATIVE_GATES[name][0]


def gate_matrix(name: str, params: Sequence[float] = ()) -> np.ndarray:
    """Матрица гейта; для двухкубитных первый кубит целей - старший бит индекса матрицы."""
    try:
        _, n_params, factory = NATIVE_GATES[name]
    except KeyError as e:
        raise UnknownGateError(name) from e
    if len(params) != n_params:
        raise UnknownGateError(f"{name} with {len(params)} params (expects {n_params})")
    return factory(*params)
