# src/state_engine/statevector.py
# --- agent_meta ---
# role: state-engine-core
# owner: @backend
# contract: Операции над плотным вектором состояния: гейты, экспоненты Паули, средние, выборки, проекции
# last_reviewed: 2026-10-12
# interfaces:
#   - init_zero(n) -> StateVector
#   - apply_gate(state, gate, targets, params) -> StateVector
#   - pauli_apply(state, p) -> StateVector
#   - apply_pauli_exp(state, p, angle) -> StateVector
#   - expectation(state, p) -> float
#   - sample(state, n_shots, seed) -> ShotTable
#   - project(state, qubit, outcome) -> (float, StateVector)
#   - overlap(a, b) -> complex
#   - extend_zero(state, extra), reduce_zero_qubits(state, n_keep)
# --- /agent_meta ---

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from src.utils import get_logger

from .config import get_engine_settings
from .errors import (
    DimensionMismatchError,
    InvalidTargetsError,
    NonZeroQubitError,
    QubitCapExceededError,
    ZeroProbabilityError,
)
from .gates import gate_matrix
from .models import PauliString, ShotTable, StateVector

_log = get_logger(__name__)

_PHASES = (1.0, 1j, -1.0, -1j)


def _check_cap(n: int, cap: Optional[int]) -> None:
    cap = get_engine_settings().max_qubits if cap is None else cap
    if n < 1 or n > cap:
        raise QubitCapExceededError(n, cap)


def init_zero(n: int, cap: Optional[int] = None) -> StateVector:
    """|0…0> на n кубитах."""
    _check_cap(n, cap)
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = 1.0
    return StateVector(n, amps)


def basis_state(n: int, index: int, cap: Optional[int] = None) -> StateVector:
    _check_cap(n, cap)
    amps = np.zeros(1 << n, dtype=complex)
    amps[index] = 1.0
    return StateVector(n, amps)


def from_amplitudes(amplitudes: np.ndarray, normalize: bool = True) -> StateVector:
    amps = np.asarray(amplitudes, dtype=complex).copy()
    n = int(round(np.log2(amps.shape[0])))
    if 1 << n != amps.shape[0]:
        raise DimensionMismatchError(n, amps.shape[0])
    _check_cap(n, None)
    if normalize:
        amps /= np.linalg.norm(amps)
    return StateVector(n, amps)


def _check_targets(targets: Sequence[int], n: int) -> None:
    if len(set(targets)) != len(targets):
        raise InvalidTargetsError(targets, n, "duplicate targets")
    if any(t < 0 or t >= n for t in targets):
        raise InvalidTargetsError(targets, n, "out of range")


def apply_matrix(state: StateVector, matrix: np.ndarray, targets: Sequence[int]) -> StateVector:
    """Применяет 2^k×2^k матрицу; targets[0] - старший бит индекса матрицы."""
    n = state.n_qubits
    k = len(targets)
    _check_targets(targets, n)
    if matrix.shape != (1 << k, 1 << k):
        raise InvalidTargetsError(targets, n, f"matrix shape {matrix.shape} does not fit {k} targets")
    psi = state.amplitudes.reshape((2,) * n)
    axes = [n - 1 - t for t in targets]
    op = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(op, psi, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return StateVector(n, out.reshape(-1))


def apply_gate(
    state: StateVector,
    gate: Union[str, np.ndarray],
    targets: Sequence[int],
    params: Sequence[float] = (),
) -> StateVector:
    matrix = gate_matrix(gate, params) if isinstance(gate, str) else np.asarray(gate, dtype=complex)
    return apply_matrix(state, matrix, list(targets))


@lru_cache(maxsize=8)
def _indices(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=128)
def _zsign(n: int, zmask: int) -> np.ndarray:
    idx = _indices(n)
    sign = np.ones(1 << n, dtype=np.int8)
    q = 0
    mask = zmask
    while mask:
        if mask & 1:
            sign *= (1 - 2 * ((idx >> q) & 1)).astype(np.int8)
        mask >>= 1
        q += 1
    sign.setflags(write=False)
    return sign


def _check_support(state: StateVector, p: PauliString) -> None:
    if max(p.ops) >= state.n_qubits:
        raise InvalidTargetsError(p.support, state.n_qubits, "Pauli support out of range")


def pauli_apply(state: StateVector, p: PauliString) -> StateVector:
    """P|ψ> по маскам: P|b> = i^ny (-1)^{|b & z|} |b ⊕ x>."""
    _check_support(state, p)
    n = state.n_qubits
    xmask, zmask, ny = p.masks()
    coeff = _PHASES[ny % 4] * p.sign
    tmp = state.amplitudes * coeff
    if zmask:
        tmp = tmp * _zsign(n, zmask)
    if xmask:
        tmp = tmp[_indices(n) ^ xmask]
    return StateVector(n, tmp)


def apply_pauli_exp(state: StateVector, p: PauliString, angle: float) -> StateVector:
    """exp(i·angle·P)|ψ> = cos(angle)|ψ> + i·sin(angle)·P|ψ>."""
    rotated = pauli_apply(state, p)
    amps = np.cos(angle) * state.amplitudes + 1j * np.sin(angle) * rotated.amplitudes
    return StateVector(state.n_qubits, amps)


def expectation(state: StateVector, p: PauliString) -> float:
    value = np.vdot(state.amplitudes, pauli_apply(state, p).amplitudes)
    return float(value.real)


def matrix_element(bra: StateVector, p: PauliString, ket: StateVector) -> complex:
    """<bra|P|ket>."""
    if bra.n_qubits != ket.n_qubits:
        raise DimensionMismatchError(bra.n_qubits, ket.n_qubits)
    return complex(np.vdot(bra.amplitudes, pauli_apply(ket, p).amplitudes))


def probabilities(state: StateVector) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2


def indices_to_bits(indices: np.ndarray, n: int) -> np.ndarray:
    """Индексы базиса -> матрица битов (строки × кубиты), кубит 0 в столбце 0."""
    return ((indices[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.uint8)


def sample(
    state: StateVector,
    n_shots: int,
    seed: Optional[object] = None,
    *,
    rng: Optional[np.random.Generator] = None,
    n_link: Optional[int] = None,
    ancilla_columns: Sequence[int] = (),
) -> ShotTable:
    """Выборка по правилу Борна; при одинаковом сиде результат идентичен."""
    if n_shots < 1:
        raise ValueError("n_shots must be >= 1")
    rng = rng if rng is not None else np.random.default_rng(seed)
    probs = probabilities(state)
    probs = probs / probs.sum()
    idx = rng.choice(probs.shape[0], size=n_shots, p=probs)
    return ShotTable(
        bits=indices_to_bits(idx.astype(np.int64), state.n_qubits),
        n_link=state.n_qubits if n_link is None else n_link,
        ancilla_columns=tuple(ancilla_columns),
        trajectory=np.zeros(n_shots, dtype=np.int64),
        seeds=(seed,),
    )


def project(state: StateVector, qubit: int, outcome: int, tol: float = 1e-12) -> Tuple[float, StateVector]:
    """Проекция кубита на исход; возвращает вероятность исхода до измерения."""
    _check_targets([qubit], state.n_qubits)
    bit = (_indices(state.n_qubits) >> qubit) & 1
    keep = bit == outcome
    probability = float(np.sum(np.abs(state.amplitudes[keep]) ** 2))
    if probability <= tol:
        raise ZeroProbabilityError(qubit, outcome, probability)
    amps = np.where(keep, state.amplitudes, 0.0) / np.sqrt(probability)
    return probability, StateVector(state.n_qubits, amps)


def overlap(a: StateVector, b: StateVector) -> complex:
    """<a|b>."""
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatchError(a.n_qubits, b.n_qubits)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    return abs(overlap(a, b)) ** 2


def extend_zero(state: StateVector, extra: int, cap: Optional[int] = None) -> StateVector:
    """Добавляет extra кубитов в |0> сверху (старшие индексы)."""
    n = state.n_qubits + extra
    _check_cap(n, cap)
    amps = np.zeros(1 << n, dtype=complex)
    amps[: state.dim] = state.amplitudes
    return StateVector(n, amps)


def reduce_zero_qubits(state: StateVector, n_keep: int, tol: float = 1e-10) -> StateVector:
    """Отбрасывает кубиты с индексами >= n_keep, которые обязаны быть в |0>."""
    head = state.amplitudes[: 1 << n_keep]
    weight = max(0.0, 1.0 - float(np.sum(np.abs(head) ** 2)) / max(state.norm() ** 2, 1e-300))
    if weight > tol:
        raise NonZeroQubitError(weight)
    if weight > 0:
        _log.debug("Отброшено %d кубитов, остаточный вес %.2e", state.n_qubits - n_keep, weight)
    return StateVector(n_keep, head.copy())
