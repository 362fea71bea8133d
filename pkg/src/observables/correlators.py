# src/observables/correlators.py
# --- agent_meta ---
# role: observables-correlators
# owner: @backend
# contract: Двухвременные корреляторы <B(t)A(0)>: точный оракул и эмулированный тест Адамара; S_ZZ и X-струна
# last_reviewed: 2026-10-14
# interfaces:
#   - two_time_correlator(psi, lattice, spec, a_op, b_op, method) -> CorrelatorSeries
#   - two_time_zz(psi, lattice, spec, link, method) -> CorrelatorSeries
#   - string_correlator(psi, lattice, spec, j, method) -> CorrelatorSeries
#   - s_zz(series, z0) -> CorrelatorSeries
#   - hadamard_circuit(lattice, spec, a_op, b_op, vartheta, phi, n_steps) -> Circuit
#   - parity_estimate(shots, columns, sign) -> Estimate
# --- /agent_meta ---

from __future__ import annotations

import math
from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from src.circuits import (
    Circuit,
    TrotterSpec,
    build_hadamard_test,
    build_trotter_step,
    estimator_weight,
    execute,
    readout_rotation,
    trotter_series,
)
from src.lattice import Lattice, pinned_row_string
from src.state_engine import (
    PauliString,
    ShotTable,
    StateVector,
    expectation,
    extend_zero,
    matrix_element,
    pauli_apply,
    sample,
)
from src.utils import get_logger

from .errors import EmptyTableError, GridMismatchError, LinkOutOfRangeError, UnknownMethodError
from .models import CorrelatorSeries, Estimate

_log = get_logger(__name__)

Method = Literal["exact_oracle", "hadamard_emulated"]
DEFAULT_ANGLES: Tuple[Tuple[float, float], ...] = ((math.pi / 2, 0.0), (math.pi / 2, math.pi / 2))


def _times(spec: TrotterSpec) -> List[float]:
    return [k * spec.dt for k in range(spec.n_steps + 1)]


def _with_hadamard_ancilla(spec: TrotterSpec) -> TrotterSpec:
    """Анцилла теста Адамара занимает индекс n_links; анциллы стабилизаторов сдвигаются за неё."""
    if spec.mode == "gate_level":
        return spec.model_copy(update={"ancilla_offset": spec.ancilla_offset + 1})
    return spec


def parity_estimate(shots: ShotTable, columns: Sequence[int], sign: int = 1) -> Estimate:
    """Среднее sign·(−1)^(сумма битов в columns) со стандартной ошибкой."""
    if shots.n_shots == 0:
        raise EmptyTableError("parity")
    values = sign * (1.0 - 2.0 * (shots.bits[:, list(columns)].sum(axis=1) % 2))
    stderr = float(np.std(values, ddof=1) / np.sqrt(values.shape[0])) if values.shape[0] > 1 else 0.0
    return Estimate(float(np.mean(values)), stderr)


def _b_with_ancilla(b_op: PauliString, ancilla: int) -> PauliString:
    return PauliString(ops={**b_op.ops, ancilla: "X"}, sign=b_op.sign)


def _exact_oracle(psi: StateVector, lattice: Lattice, spec: TrotterSpec, a_op: PauliString, b_op: PauliString) -> List[complex]:
    step = build_trotter_step(lattice, spec)
    left = trotter_series(psi, lattice, spec, step=step)
    right = trotter_series(pauli_apply(psi, a_op), lattice, spec, step=step)
    return [matrix_element(l, b_op, r) for l, r in zip(left, right)]


def _hadamard_emulated(
    psi: StateVector,
    lattice: Lattice,
    spec: TrotterSpec,
    a_op: PauliString,
    b_op: PauliString,
    angles: Sequence[Tuple[float, float]],
    n_shots: Optional[int],
    rng: np.random.Generator,
) -> Tuple[List[complex], List[Tuple[float, float]]]:
    """Для каждого (ϑ, φ) измеряет <B⊗X_a> на шагах 0..n и решает линейную систему на (Re, Im)."""
    ancilla = psi.n_qubits
    n_total = ancilla + 1
    h_spec = _with_hadamard_ancilla(spec)
    step = build_trotter_step(lattice, h_spec)
    observable = _b_with_ancilla(b_op, ancilla)
    rotation = readout_rotation(b_op, ancilla, n_total)
    columns = sorted(b_op.ops) + [ancilla]

    readings: List[List[Estimate]] = []
    for vartheta, phi in angles:
        state = execute(build_hadamard_test(a_op, vartheta, phi, ancilla, n_total), extend_zero(psi, 1), keep_ancillas=True)
        row: List[Estimate] = []
        for k in range(spec.n_steps + 1):
            if k > 0:
                state = execute(step, state)
            if n_shots is None:
                row.append(Estimate(expectation(state, observable), 0.0))
            else:
                shots = sample(execute(rotation, state, keep_ancillas=True), n_shots, rng=rng)
                row.append(parity_estimate(shots, columns, b_op.sign))
        readings.append(row)

    weights = np.array([estimator_weight(v, p) for v, p in angles])
    pinv = np.linalg.pinv(weights)
    values, errors = [], []
    for k in range(spec.n_steps + 1):
        measured = np.array([readings[i][k].value for i in range(len(angles))])
        sigma = np.array([readings[i][k].stderr for i in range(len(angles))])
        re, im = pinv @ measured
        err = np.sqrt((pinv ** 2) @ (sigma ** 2))
        values.append(complex(re, im))
        errors.append((float(err[0]), float(err[1])))
    return values, errors


def two_time_correlator(
    psi: StateVector,
    lattice: Lattice,
    spec: TrotterSpec,
    a_op: PauliString,
    b_op: PauliString,
    method: Method = "exact_oracle",
    *,
    n_shots: Optional[int] = None,
    seed: Optional[int] = None,
    angles: Sequence[Tuple[float, float]] = DEFAULT_ANGLES,
    label: str = "",
) -> CorrelatorSeries:
    """<ψ|U†^k B U^k A|ψ> для k = 0..spec.n_steps, U - шаг Троттера spec."""
    times = _times(spec)
    if method == "exact_oracle":
        values = _exact_oracle(psi, lattice, spec, a_op, b_op)
        errors = [(0.0, 0.0)] * len(values)
    elif method == "hadamard_emulated":
        rng = np.random.default_rng(seed)
        values, errors = _hadamard_emulated(psi, lattice, spec, a_op, b_op, angles, n_shots, rng)
    else:
        raise UnknownMethodError(method)
    _log.debug("Коррелятор %s (%s): %d точек", label or f"{b_op}|{a_op}", method, len(values))
    return CorrelatorSeries(
        label=label,
        times=times,
        re=[v.real for v in values],
        im=[v.imag for v in values],
        re_err=[e[0] for e in errors],
        im_err=[e[1] for e in errors],
    )


def two_time_zz(
    psi: StateVector,
    lattice: Lattice,
    spec: TrotterSpec,
    link: int,
    method: Method = "exact_oracle",
    **kwargs,
) -> CorrelatorSeries:
    """<Z_l(t) Z_l(0)> на сетке Троттера."""
    if not 0 <= link < lattice.n_links:
        raise LinkOutOfRangeError(link, lattice.n_links)
    z = PauliString.z_on([link])
    return two_time_correlator(psi, lattice, spec, z, z, method, label=f"ZZ[{link}]", **kwargs)


def string_correlator(
    psi: StateVector,
    lattice: Lattice,
    spec: TrotterSpec,
    j: int,
    method: Method = "exact_oracle",
    **kwargs,
) -> CorrelatorSeries:
    """C(j, t) = <(X_Q1…X_Qj)(t)·X_Q1(0)>, Q1 - левое закреплённое ребро строки.

    Полевые члены на Q1 всегда замаскированы.
    """
    path = pinned_row_string(lattice, j)
    if spec.field_mask is not None and path[0] not in spec.field_mask:
        spec = spec.model_copy(update={"field_mask": tuple(sorted(set(spec.field_mask) | {path[0]}))})
    a_op = PauliString.x_on([path[0]])
    b_op = PauliString.x_on(path)
    return two_time_correlator(psi, lattice, spec, a_op, b_op, method, label=f"C[{j}]", **kwargs)


def s_zz(series: CorrelatorSeries, z0: Union[Estimate, float, Sequence[Estimate]]) -> CorrelatorSeries:
    """S_ZZ(t) = Re<Z(t)Z(0)>·<Z(0)> с распространением ошибок."""
    n = len(series.times)
    if isinstance(z0, Estimate):
        z_vals = [z0] * n
    elif isinstance(z0, (int, float)):
        z_vals = [Estimate(float(z0), 0.0)] * n
    else:
        z_vals = list(z0)
        if len(z_vals) != n:
            raise GridMismatchError(n, len(z_vals))
    re = [r * z.value for r, z in zip(series.re, z_vals)]
    re_err = [
        math.hypot(z.value * e, r * z.stderr) for r, e, z in zip(series.re, series.re_err, z_vals)
    ]
    return CorrelatorSeries(
        label=f"S_ZZ {series.label}".strip(),
        times=list(series.times),
        re=re,
        im=[0.0] * n,
        re_err=re_err,
    )


def hadamard_circuit(
    lattice: Lattice,
    spec: TrotterSpec,
    a_op: PauliString,
    b_op: PauliString,
    vartheta: float,
    phi: float,
    n_steps: int,
) -> Circuit:
    """Полная схема теста Адамара для зашумлённого прогона: подготовка анциллы, k шагов, поворот считывания.

    Анцилла теста - кубит lattice.n_links; анциллы стабилизаторов в circuit.ancillas.
    """
    ancilla = lattice.n_links
    h_spec = _with_hadamard_ancilla(spec)
    circuit = build_hadamard_test(a_op, vartheta, phi, ancilla, ancilla + 1)
    if n_steps > 0:
        step = build_trotter_step(lattice, h_spec)
        for _ in range(n_steps):
            circuit = circuit.compose(step)
    return circuit.compose(readout_rotation(b_op, ancilla, circuit.n_qubits))
