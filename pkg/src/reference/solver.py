# src/reference/solver.py
# --- agent_meta ---
# role: reference-solver
# owner: @backend
# contract: Точная диагонализация (основное состояние) и точная эволюция exp(-iHt)|ψ>
# last_reviewed: 2026-10-13
# interfaces:
#   - ground_state(h, seed=0) -> (float, StateVector)
#   - exact_evolve(state, h, t) -> StateVector
#   - evolve_series(state, h, dt, n_steps) -> list[StateVector]
#   - energy(state, h) -> float
# dependencies:
#   - scipy.sparse.linalg (eigsh, expm_multiply), scipy.linalg (eigh, expm)
# --- /agent_meta ---

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg as la
from scipy.sparse.linalg import ArpackNoConvergence, eigsh, expm_multiply

from src.state_engine import StateVector, get_engine_settings
from src.state_engine.errors import QubitCapExceededError
from src.utils import get_logger, timed

from .config import SolverSettings, get_solver_settings
from .errors import InvalidTimeError, SolverConvergenceError
from .hamiltonian import SparseHamiltonian

_log = get_logger(__name__)


def _check_cap(h: SparseHamiltonian) -> None:
    cap = get_engine_settings().max_qubits
    if h.n_qubits > cap:
        raise QubitCapExceededError(h.n_qubits, cap)


def _lowest_pair(h: SparseHamiltonian, settings: SolverSettings, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Два нижних собственных значения и векторы (плотно или Ланцошем)."""
    if h.n_qubits <= settings.dense_max_qubits:
        values, vectors = la.eigh(h.to_dense(), subset_by_index=[0, min(1, h.dim - 1)])
        return values, vectors

    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(h.dim)
    try:
        values, vectors = eigsh(
            h.to_sparse(),
            k=2,
            which="SA",
            v0=v0,
            tol=settings.eigsh_tol,
            maxiter=settings.eigsh_maxiter,
        )
    except ArpackNoConvergence as e:
        raise SolverConvergenceError("eigsh", str(e)) from e
    order = np.argsort(values)
    return values[order], vectors[:, order]


def ground_state(
    h: SparseHamiltonian,
    seed: int = 0,
    settings: Optional[SolverSettings] = None,
) -> Tuple[float, StateVector]:
    """Нижняя собственная пара H.

    Невязка ‖Hψ − Eψ‖ проверяется после решения; при малом спектральном зазоре
    пишется предупреждение (вырожденное основное состояние определено неоднозначно).
    """
    settings = settings or get_solver_settings()
    _check_cap(h)
    with timed(_log, f"ground_state n={h.n_qubits}"):
        values, vectors = _lowest_pair(h, settings, seed)

    e0 = float(values[0])
    psi = np.asarray(vectors[:, 0], dtype=complex)
    psi /= np.linalg.norm(psi)
    residual = float(np.linalg.norm(h.to_sparse() @ psi - e0 * psi))
    if residual > settings.residual_tol:
        raise SolverConvergenceError("ground_state", f"residual {residual:.3e} > {settings.residual_tol:.1e}")
    if len(values) > 1 and float(values[1] - values[0]) < settings.gap_warning:
        _log.warning("Малый спектральный зазор %.3e: основное состояние вырождено", float(values[1] - values[0]))

    # Фиксация глобальной фазы: наибольшая компонента вещественна и положительна.
    k = int(np.argmax(np.abs(psi)))
    psi *= np.abs(psi[k]) / psi[k]
    _log.debug("E0=%.12f, невязка %.2e", e0, residual)
    return e0, StateVector(h.n_qubits, psi)


def _check_unitarity(before: float, after: StateVector, settings: SolverSettings) -> None:
    if abs(after.norm() - before) > settings.unitarity_tol:
        raise SolverConvergenceError("exact_evolve", f"norm drift {abs(after.norm() - before):.3e}")


def exact_evolve(
    state: StateVector,
    h: SparseHamiltonian,
    t: float,
    settings: Optional[SolverSettings] = None,
) -> StateVector:
    """exp(−iHt)|ψ>: expm для малых систем, expm_multiply для остальных."""
    if t < 0:
        raise InvalidTimeError(t)
    settings = settings or get_solver_settings()
    _check_cap(h)
    if t == 0:
        return state.copy()
    if h.n_qubits <= settings.dense_max_qubits:
        amps = la.expm(-1j * t * h.to_dense()) @ state.amplitudes
    else:
        amps = expm_multiply(-1j * t * h.to_sparse(), state.amplitudes)
    out = StateVector(state.n_qubits, np.asarray(amps, dtype=complex))
    _check_unitarity(state.norm(), out, settings)
    return out


def evolve_series(
    state: StateVector,
    h: SparseHamiltonian,
    dt: float,
    n_steps: int,
    settings: Optional[SolverSettings] = None,
) -> List[StateVector]:
    """Состояния в моменты 0, dt, ..., n_steps·dt (n_steps + 1 штук)."""
    if dt <= 0:
        raise InvalidTimeError(dt)
    settings = settings or get_solver_settings()
    _check_cap(h)
    if n_steps == 0:
        return [state.copy()]
    if h.n_qubits <= settings.dense_max_qubits:
        step = la.expm(-1j * dt * h.to_dense())
        out = [state.copy()]
        amps = state.amplitudes
        for _ in range(n_steps):
            amps = step @ amps
            out.append(StateVector(state.n_qubits, amps.copy()))
    else:
        block = expm_multiply(
            -1j * h.to_sparse(),
            state.amplitudes,
            start=0.0,
            stop=dt * n_steps,
            num=n_steps + 1,
            endpoint=True,
        )
        out = [StateVector(state.n_qubits, np.asarray(row, dtype=complex)) for row in block]
    _check_unitarity(state.norm(), out[-1], settings)
    return out


def energy(state: StateVector, h: SparseHamiltonian) -> float:
    """<ψ|H|ψ> через разреженную матрицу."""
    psi = state.amplitudes
    return float(np.real(np.vdot(psi, h.to_sparse() @ psi)))
