# src/noise/trajectories.py
# --- agent_meta ---
# role: noise-trajectories
# owner: @backend
# contract: Монте-Карло траектории: случайные паули-ошибки после 2-кубитных гейтов, выборка, ошибки считывания
# last_reviewed: 2026-10-14
# interfaces:
#   - NoisyExecution.run(circuit, state, rng) -> (StateVector, int)
#   - run_trajectories(circuit, initial_state, model, n_traj, shots_per_traj) -> ShotTable
#   - run_trajectory_series(step, initial_state, model, n_steps, ...) -> list[ShotTable]
#   - apply_readout_noise(bits, model, rng) -> np.ndarray
# dependencies:
#   - numpy.random.Generator (по траектории default_rng([master_seed, index]))
#   - concurrent.futures.ThreadPoolExecutor
# --- /agent_meta ---

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from src.circuits import Circuit, apply_circuit_gate, execute
from src.state_engine import (
    ShotTable,
    StateVector,
    apply_gate,
    extend_zero,
    probabilities,
    project,
    reduce_zero_qubits,
    sample,
)
from src.utils import get_logger, timed

from .config import get_noise_settings
from .errors import InvalidTrajectoryCountError, ReadoutShapeError
from .models import NoiseModel

_log = get_logger(__name__)

T = TypeVar("T")
ObservableFn = Callable[[StateVector], Sequence[float]]
ReadoutSpec = Union[NoiseModel, Tuple[object, object]]

_PAULI_LETTERS = "IXYZ"
# 15 неединичных двухкубитных Паули; индекс k -> (k // 4, k % 4)
TWO_QUBIT_PAULIS: Tuple[Tuple[str, str], ...] = tuple(
    (_PAULI_LETTERS[k // 4], _PAULI_LETTERS[k % 4]) for k in range(1, 16)
)


def _readout_vectors(model: ReadoutSpec, n_cols: int) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(model, NoiseModel):
        return model.readout_arrays(n_cols)
    e0, e1 = (np.asarray(m, dtype=float) for m in model)
    if e0.ndim == 0:
        e0 = np.full(n_cols, float(e0))
    if e1.ndim == 0:
        e1 = np.full(n_cols, float(e1))
    return e0, e1


def apply_readout_noise(bits: np.ndarray, model: ReadoutSpec, rng: np.random.Generator) -> np.ndarray:
    """Независимо переворачивает каждый бит: 0 с вероятностью ε0, 1 с вероятностью ε1.

    model - NoiseModel или пара (ε0, ε1) из чисел либо по-столбцовых массивов.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    n_cols = bits.shape[-1]
    e0, e1 = _readout_vectors(model, n_cols)
    for vector in (e0, e1):
        if vector.shape[0] != n_cols:
            raise ReadoutShapeError(n_cols, vector.shape[0])
    if not np.any(e0) and not np.any(e1):
        return bits.copy()
    flip_p = np.where(bits == 0, e0, e1)
    flips = rng.random(bits.shape) < flip_p
    return (bits ^ flips.astype(np.uint8)).astype(np.uint8)


class NoisyExecution:
    """Исполнение схемы с паули-ошибкой после каждого двухкубитного гейта.

    Ошибка вставляется с вероятностью p2 и выбирается равновероятно из 15
    неединичных двухкубитных Паули. Однокубитные гейты и простаивающие кубиты не шумят.
    """

    def __init__(self, model: NoiseModel):
        self.model = model
        self._log = get_logger(f"{__name__}.NoisyExecution")

    def run(self, circuit: Circuit, state: StateVector, rng: np.random.Generator) -> Tuple[StateVector, int]:
        """Возвращает состояние на всех кубитах схемы (анциллы сохранены) и число вставленных ошибок."""
        if circuit.n_qubits > state.n_qubits:
            state = extend_zero(state, circuit.n_qubits - state.n_qubits)
        n_errors = 0
        p2 = self.model.p2
        for gate in circuit.gates:
            state = apply_circuit_gate(state, gate)
            if p2 <= 0.0 or not gate.is_entangling:
                continue
            if rng.random() < p2:
                pauli = TWO_QUBIT_PAULIS[int(rng.integers(len(TWO_QUBIT_PAULIS)))]
                for qubit, letter in zip(gate.qubits, pauli):
                    if letter != "I":
                        state = apply_gate(state, letter.lower(), [qubit])
                n_errors += 1
        self._log.debug("Схема %s: вставлено ошибок %d", circuit.name, n_errors)
        return state, n_errors


def measure_and_reset(
    state: StateVector,
    qubits: Sequence[int],
    n_keep: int,
    rng: np.random.Generator,
) -> Tuple[StateVector, List[int]]:
    """Проективно измеряет qubits, сбрасывает их в |0> и отбрасывает кубиты >= n_keep."""
    outcomes: List[int] = []
    for q in qubits:
        bit = (np.arange(state.dim) >> q) & 1
        p1 = float(np.sum(probabilities(state)[bit == 1]))
        outcome = int(rng.random() < p1)
        _, state = project(state, q, outcome)
        if outcome:
            state = apply_gate(state, "x", [q])
        outcomes.append(outcome)
    return reduce_zero_qubits(state, n_keep), outcomes


def _map_ordered(fn: Callable[[int], T], n: int, max_workers: int) -> List[T]:
    """Результаты в порядке индексов независимо от порядка завершения потоков."""
    if max_workers <= 1 or n <= 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=min(max_workers, n)) as pool:
        return list(pool.map(fn, range(n)))


def _resolve_counts(n_traj: Optional[int], shots_per_traj: Optional[int], max_workers: Optional[int]) -> Tuple[int, int, int]:
    settings = get_noise_settings()
    n_traj = settings.n_traj if n_traj is None else n_traj
    shots = settings.shots_per_traj if shots_per_traj is None else shots_per_traj
    if n_traj < 1 or shots < 1:
        raise InvalidTrajectoryCountError(n_traj, shots)
    return n_traj, shots, settings.workers if max_workers is None else max_workers


def _stamp(table: ShotTable, model: NoiseModel, index: int, readout_rng: np.random.Generator) -> ShotTable:
    """Ошибки считывания только на измеряемых столбцах; столбцы ancilla_columns не искажаются."""
    flags = set(table.ancilla_columns)
    measured = [c for c in range(table.n_qubits) if c not in flags]
    e0, e1 = model.readout_arrays(table.n_qubits)
    bits = table.bits.copy()
    bits[:, measured] = apply_readout_noise(table.bits[:, measured], (e0[measured], e1[measured]), readout_rng)
    return replace(
        table,
        bits=bits,
        trajectory=np.full(table.n_shots, index, dtype=np.int64),
        seeds=((model.master_seed, index),),
    )


def run_trajectories(
    circuit: Circuit,
    initial_state: StateVector,
    model: NoiseModel,
    n_traj: Optional[int] = None,
    shots_per_traj: Optional[int] = None,
    *,
    observables: Optional[ObservableFn] = None,
    max_workers: Optional[int] = None,
) -> ShotTable:
    """Выборка n_traj × shots_per_traj строк по всем кубитам схемы.

    Столбцы 0..n-1 - кубиты начального состояния, анциллы схемы идут следом.
    Если передан observables, его значения на каждом зашумлённом состоянии
    (до выборки) лежат в meta["observables"] массивом (n_traj, k).
    """
    n_traj, shots, workers = _resolve_counts(n_traj, shots_per_traj, max_workers)
    executor = NoisyExecution(model)
    n_link = initial_state.n_qubits

    def one(index: int) -> Tuple[ShotTable, Optional[List[float]], int]:
        rng = model.rng_for(index)
        state, n_errors = executor.run(circuit, initial_state, rng)
        values = list(observables(state)) if observables is not None else None
        table = sample(state, shots, rng=rng, n_link=n_link, ancilla_columns=circuit.ancillas)
        return _stamp(table, model, index, rng), values, n_errors

    with timed(_log, f"run_trajectories {circuit.name} x{n_traj}"):
        parts = _map_ordered(one, n_traj, workers)

    table = ShotTable.concat([p[0] for p in parts])
    meta = dict(table.meta)
    meta["gate_errors"] = [p[2] for p in parts]
    if observables is not None:
        meta["observables"] = np.array([p[1] for p in parts], dtype=float)
    _log.info(
        "Траектории %s: %d x %d выстрелов, ошибок в среднем %.2f",
        circuit.name, n_traj, shots, float(np.mean(meta["gate_errors"])),
    )
    return replace(table, meta=meta)


def run_trajectory_series(
    step: Circuit,
    initial_state: StateVector,
    model: NoiseModel,
    n_steps: int,
    n_traj: Optional[int] = None,
    shots_per_traj: Optional[int] = None,
    *,
    prep: Optional[Circuit] = None,
    readout: Optional[Circuit] = None,
    observables: Optional[ObservableFn] = None,
    max_workers: Optional[int] = None,
) -> List[ShotTable]:
    """Таблицы выстрелов после 0, 1, …, n_steps шагов (n_steps + 1 штук).

    Каждая траектория прогоняет шаги последовательно. Анциллы prep и шага
    измеряются и сбрасываются после каждой схемы; если хоть раз выпала 1,
    в столбце-флаге (последний, ancilla_columns) у всех выстрелов траектории стоит 1.
    readout - безшумная смена базиса перед выборкой (например, H для X-базиса).
    """
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    n_traj, shots, workers = _resolve_counts(n_traj, shots_per_traj, max_workers)
    executor = NoisyExecution(model)
    n_link = initial_state.n_qubits
    has_flag = bool(step.ancillas) or bool(prep is not None and prep.ancillas)

    def measured_table(state: StateVector, flag: int, rng: np.random.Generator) -> Tuple[ShotTable, Optional[List[float]]]:
        values = list(observables(state)) if observables is not None else None
        if readout is not None:
            state = execute(readout, state)
        table = sample(state, shots, rng=rng, n_link=n_link)
        if has_flag:
            column = np.full((table.n_shots, 1), flag, dtype=np.uint8)
            table = replace(table, bits=np.concatenate([table.bits, column], axis=1), ancilla_columns=(n_link,))
        return table, values

    def one(index: int) -> List[Tuple[ShotTable, Optional[List[float]]]]:
        rng = model.rng_for(index)
        state, flag = initial_state, 0
        if prep is not None:
            state, _ = executor.run(prep, state, rng)
            state, bits = measure_and_reset(state, prep.ancillas, n_link, rng)
            flag |= int(any(bits))
        out = []
        for k in range(n_steps + 1):
            if k > 0:
                state, _ = executor.run(step, state, rng)
                state, bits = measure_and_reset(state, step.ancillas, n_link, rng)
                flag |= int(any(bits))
            table, values = measured_table(state, flag, rng)
            out.append((_stamp(table, model, index, rng), values))
        return out

    with timed(_log, f"run_trajectory_series {step.name} x{n_traj}"):
        per_traj = _map_ordered(one, n_traj, workers)

    series: List[ShotTable] = []
    for k in range(n_steps + 1):
        table = ShotTable.concat([per_traj[i][k][0] for i in range(n_traj)])
        meta = dict(table.meta)
        meta["step"] = k
        if observables is not None:
            meta["observables"] = np.array([per_traj[i][k][1] for i in range(n_traj)], dtype=float)
        series.append(replace(table, meta=meta))
    _log.info("Серия %s: %d шагов, %d траекторий", step.name, n_steps, n_traj)
    return series
