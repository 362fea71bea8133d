# src/mitigation/readout.py
# --- agent_meta ---
# role: mitigation-readout
# owner: @backend
# contract: Инверсия ошибок считывания тензорным произведением по-кубитных матриц ошибок
# last_reviewed: 2026-10-14
# interfaces:
#   - readout_matrix(qubits, model) -> np.ndarray
#   - forward_readout(prob, qubits, model) -> np.ndarray
#   - invert_readout(prob, qubits, model, clip=False) -> np.ndarray
#   - distribution_from_shots(shots, columns) -> np.ndarray
#   - parity_expectation(prob) -> float
#   - clip_and_renormalize(prob) -> np.ndarray
# --- /agent_meta ---

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from src.state_engine import ShotTable
from src.utils import get_logger

from .errors import QubitCountError
from .models import ReadoutModel

_log = get_logger(__name__)

_NEGATIVE_TOL = 1e-12


def _kron_chain(matrices: Sequence[np.ndarray]) -> np.ndarray:
    """Бит i индекса вероятности соответствует qubits[i]: kron(M_{n-1}, …, M_0)."""
    return reduce(np.kron, reversed(list(matrices)), np.eye(1))


def _check_length(prob: np.ndarray, qubits: Sequence[int]) -> None:
    if prob.shape[0] != 1 << len(qubits):
        raise QubitCountError(len(qubits), prob.shape[0])


def readout_matrix(qubits: Sequence[int], model: ReadoutModel) -> np.ndarray:
    return _kron_chain([model.confusion(q) for q in qubits])


def forward_readout(prob: np.ndarray, qubits: Sequence[int], model: ReadoutModel) -> np.ndarray:
    prob = np.asarray(prob, dtype=float)
    _check_length(prob, qubits)
    return readout_matrix(qubits, model) @ prob


def clip_and_renormalize(prob: np.ndarray) -> np.ndarray:
    """Отрицательные квазивероятности в ноль, затем нормировка на 1."""
    clipped = np.clip(np.asarray(prob, dtype=float), 0.0, None)
    total = clipped.sum()
    return clipped / total if total > 0 else clipped


def invert_readout(
    prob: np.ndarray,
    qubits: Sequence[int],
    model: ReadoutModel,
    clip: bool = False,
) -> np.ndarray:
    """R⁻¹·p; отрицательные компоненты сохраняются, если не задан clip."""
    prob = np.asarray(prob, dtype=float)
    _check_length(prob, qubits)
    inverse = _kron_chain([np.linalg.inv(model.confusion(q)) for q in qubits])
    out = inverse @ prob
    if out.min() < -_NEGATIVE_TOL:
        _log.warning("Инверсия считывания дала отрицательные квазивероятности (min %.3e)", float(out.min()))
    return clip_and_renormalize(out) if clip else out


def distribution_from_shots(shots: ShotTable, columns: Sequence[int]) -> np.ndarray:
    """Эмпирическое распределение по 2^k исходам; бит i индекса - столбец columns[i]."""
    if shots.n_shots == 0:
        return np.zeros(1 << len(columns))
    weights = 1 << np.arange(len(columns), dtype=np.int64)
    index = shots.bits[:, list(columns)].astype(np.int64) @ weights
    return np.bincount(index, minlength=1 << len(columns)) / shots.n_shots


def parity_expectation(prob: np.ndarray) -> float:
    """Σ p(x)·(−1)^|x| - среднее произведения Z по всем кубитам распределения."""
    prob = np.asarray(prob, dtype=float)
    idx = np.arange(prob.shape[0], dtype=np.int64)
    popcount = np.zeros_like(idx)
    while np.any(idx):
        popcount += idx & 1
        idx >>= 1
    return float(np.dot(prob, 1 - 2 * (popcount % 2)))
