# src/harness/scenarios/common.py
# --- agent_meta ---
# role: harness-scenario-helpers
# owner: @backend
# contract: Общие блоки сценариев: фабрика строк, бесшумные ряды Троттера, зашумлённые ряды расстояния пары и корреляторов со стадиями смягчения
# last_reviewed: 2026-10-16
# interfaces:
#   - Rows (фабрика ResultRow для точки сетки)
#   - vertex_label(vertex), link_label(lattice, link)
#   - noisy_separation(config, lattice, h_e, lam, psi0, key, rows) -> JobOutput
#   - noisy_correlator(config, lattice, spec, psi0, a_op, b_op, key) -> (CorrelatorSeries, list[float])
#   - magnitude_rescale(measured, twin_measured, twin_ideal) -> (CorrelatorSeries, list[dict])
# --- /agent_meta ---

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.circuits import Circuit, TrotterSpec, build_trotter_step, estimator_weight
from src.lattice import Lattice, VertexId
from src.mitigation import (
    PostselectCriteria,
    ReadoutModel,
    calibrate,
    clamp_p_eff,
    depolarized_reference,
    distribution_from_shots,
    effective_depol,
    invert_readout,
    mitigate_series,
    postselect,
)
from src.mitigation.errors import DegenerateReferenceError, FullDepolarizationError
from src.noise import run_trajectories, run_trajectory_series
from src.observables import (
    DEFAULT_ANGLES,
    CorrelatorSeries,
    EmptyTableError,
    Estimate,
    distribution_mean_separation,
    exact_mean_separation,
    hadamard_circuit,
    mean_separation,
    parity_estimate,
)
from src.state_engine import PauliString, ShotTable, StateVector, init_zero
from src.utils import get_logger

from ..models import JobOutput, ResultRow, Stage
from ..options import ExperimentConfig

_log = get_logger(__name__)

# Плотная инверсия считывания строит матрицу 2^n × 2^n
READOUT_MAX_LINKS = 12


def vertex_label(vertex: VertexId) -> str:
    return f"({vertex[0]},{vertex[1]})"


def link_label(lattice: Lattice, link: int) -> str:
    return lattice.links[link].label


@dataclass(frozen=True)
class Rows:
    """Фабрика строк одной точки сетки."""
    scenario: str
    h_e: float = 0.0
    lam: float = 0.0
    dt: float = 0.0

    def make(
        self,
        observable: str,
        value: float,
        *,
        variant: str = "",
        site: str = "",
        t: float = 0.0,
        stderr: float = 0.0,
        stage: Stage = "ideal",
        **overrides: Any,
    ) -> ResultRow:
        base = {"h_e": self.h_e, "lam": self.lam, "dt": self.dt, **overrides}
        return ResultRow(
            scenario=self.scenario,
            observable=observable,
            variant=variant,
            site=site,
            t=float(t),
            value=float(value),
            stderr=float(stderr),
            stage=stage,
            **base,
        )


# --- зашумлённое расстояние пары ------------------------------------------------


def _separation_stages(
    table: ShotTable,
    lattice: Lattice,
    config: ExperimentConfig,
    readout: Optional[ReadoutModel],
) -> Tuple[Dict[str, Estimate], float]:
    """Оценки расстояния по стадиям и доля выстрелов после постселекции по анциллам."""
    out: Dict[str, Estimate] = {}
    in_sector = PostselectCriteria(charge_count=2)
    try:
        out["raw"] = mean_separation(postselect(table, in_sector, lattice), lattice)
    except EmptyTableError:
        _log.warning("Нет выстрелов в секторе двух зарядов")
    if not config.mitigation.postselect:
        return out, 1.0

    kept = postselect(table, PostselectCriteria(ancilla_zero=True), lattice)
    try:
        out["postselected"] = mean_separation(postselect(kept, in_sector, lattice), lattice)
    except EmptyTableError:
        _log.warning("Постселекция не оставила выстрелов в секторе двух зарядов")
    if readout is not None and kept.n_shots:
        columns = list(range(lattice.n_links))
        probs = invert_readout(distribution_from_shots(kept, columns), columns, readout)
        try:
            out["readout"] = Estimate(distribution_mean_separation(probs, lattice), out.get("postselected", Estimate(0.0, 0.0)).stderr)
        except EmptyTableError:
            pass
    return out, kept.retention


def _noisy_separation_series(
    config: ExperimentConfig,
    lattice: Lattice,
    spec: TrotterSpec,
    psi0: StateVector,
    key: Tuple[Any, ...],
    prep: Optional[Circuit] = None,
) -> Tuple[List[Dict[str, Estimate]], List[float]]:
    model = config.noise_for(*key)
    readout = None
    if config.mitigation.readout and lattice.n_links <= READOUT_MAX_LINKS:
        readout = ReadoutModel.from_noise(model, lattice.n_links)
    step = build_trotter_step(lattice, spec)
    start = psi0 if prep is None else init_zero(lattice.n_links)
    tables = run_trajectory_series(
        step, start, model, spec.n_steps, config.n_traj, config.shots_per_traj, prep=prep
    )
    stages, retention = [], []
    for table in tables:
        estimates, kept = _separation_stages(table, lattice, config, readout)
        stages.append(estimates)
        retention.append(kept)
    return stages, retention


def noisy_separation(
    config: ExperimentConfig,
    lattice: Lattice,
    h_e: float,
    lam: float,
    psi0: StateVector,
    key: Tuple[Any, ...],
    rows: Rows,
    variant: str = "",
    prep: Optional[Circuit] = None,
) -> JobOutput:
    """Ряды расстояния пары по стадиям raw/postselected/readout/mitigated.

    Если передана prep, траектории стартуют из |0…0> и подготовка тоже шумит;
    psi0 остаётся идеальным начальным состоянием для калибровки.
    p_eff берётся из стационарного двойника с λ = 0 на той же глубине:
    идеальное расстояние там постоянно, а смешанное состояние даёт среднее по решётке.
    """
    times = config.times
    spec = config.trotter_spec(h_e, lam)
    stages, retention = _noisy_separation_series(config, lattice, spec, psi0, key, prep)
    out = JobOutput()
    for k, (t, estimates) in enumerate(zip(times, stages)):
        for stage, est in estimates.items():
            out.rows.append(rows.make("separation", est.value, variant=variant, t=t, stderr=est.stderr, stage=stage))
    out.meta["retention"] = [{"label": f"{variant or 'separation'} lam={lam:g} h_e={h_e:g}", "t": t, "value": r} for t, r in zip(times, retention)]

    if not config.mitigation.rescale:
        return out
    if lam == 0.0:
        twin = stages
    else:
        twin_spec = config.trotter_spec(h_e, 0.0)
        twin, _ = _noisy_separation_series(config, lattice, twin_spec, psi0, key + ("twin",), prep)

    best = "readout" if "readout" in stages[0] else ("postselected" if "postselected" in stages[0] else "raw")
    if any(best not in s for s in stages + twin):
        _log.warning("Перемасштабирование пропущено: стадия %s есть не во всех точках", best)
        return out
    o_initial = exact_mean_separation(psi0, lattice)
    o_dep = depolarized_reference("separation", lattice)
    records = calibrate(times, [s[best].value for s in twin], o_initial, o_dep, source="stationary")
    try:
        mitigated = mitigate_series([s[best].value for s in stages], records, o_dep, [s[best].stderr for s in stages])
    except FullDepolarizationError as e:
        _log.warning("Перемасштабирование невозможно: %s", e)
        return out
    for t, est in zip(times, mitigated):
        out.rows.append(rows.make("separation", est.value, variant=variant, t=t, stderr=est.stderr, stage="mitigated"))
    out.meta["p_eff"] = [{"label": f"{variant or 'separation'} h_e={h_e:g}", **r.model_dump()} for r in records]
    return out


# --- зашумлённый коррелятор через тест Адамара ------------------------------------


def _solve_angles(readings: Sequence[Estimate]) -> Tuple[complex, Tuple[float, float]]:
    weights = np.array([estimator_weight(v, p) for v, p in DEFAULT_ANGLES])
    pinv = np.linalg.pinv(weights)
    re, im = pinv @ np.array([r.value for r in readings])
    err = np.sqrt((pinv ** 2) @ (np.array([r.stderr for r in readings]) ** 2))
    return complex(re, im), (float(err[0]), float(err[1]))


def noisy_correlator(
    config: ExperimentConfig,
    lattice: Lattice,
    spec: TrotterSpec,
    psi0: StateVector,
    a_op: PauliString,
    b_op: PauliString,
    key: Tuple[Any, ...],
    label: str = "",
) -> Tuple[CorrelatorSeries, List[float]]:
    """Тест Адамара под шумом для k = 0..n_steps; возвращает ряд и retention по точкам."""
    columns = sorted(b_op.ops) + [lattice.n_links]
    values, errors, retention = [], [], []
    for k in range(spec.n_steps + 1):
        readings = []
        kept_fraction = []
        for i, (vartheta, phi) in enumerate(DEFAULT_ANGLES):
            circuit = hadamard_circuit(lattice, spec, a_op, b_op, vartheta, phi, k)
            model = config.noise_for(*key, k, i)
            shots = run_trajectories(circuit, psi0, model, config.n_traj, config.shots_per_traj)
            if config.mitigation.postselect:
                shots = postselect(shots, PostselectCriteria(ancilla_zero=True))
            kept_fraction.append(shots.retention)
            readings.append(parity_estimate(shots, columns, b_op.sign))
        value, err = _solve_angles(readings)
        values.append(value)
        errors.append(err)
        retention.append(float(np.mean(kept_fraction)))
    series = CorrelatorSeries(
        label=label,
        times=[k * spec.dt for k in range(spec.n_steps + 1)],
        re=[v.real for v in values],
        im=[v.imag for v in values],
        re_err=[e[0] for e in errors],
        im_err=[e[1] for e in errors],
    )
    return series, retention


def magnitude_rescale(
    measured: CorrelatorSeries,
    twin_measured: CorrelatorSeries,
    twin_ideal: CorrelatorSeries,
) -> Tuple[CorrelatorSeries, List[Dict[str, Any]]]:
    """Делит ряд на затухание модуля двойника с λ = h_E = 0 (деполяризованное значение 0)."""
    re, im, re_err, im_err, trace = [], [], [], [], []
    for k, t in enumerate(measured.times):
        ideal = abs(complex(twin_ideal.re[k], twin_ideal.im[k]))
        seen = abs(complex(twin_measured.re[k], twin_measured.im[k]))
        try:
            p, flagged = clamp_p_eff(effective_depol(seen, ideal, 0.0))
        except DegenerateReferenceError:
            p, flagged = 0.0, True
        scale = 1.0 / (1.0 - p) if p < 1.0 else math.nan
        re.append(measured.re[k] * scale)
        im.append(measured.im[k] * scale)
        re_err.append(measured.re_err[k] * scale)
        im_err.append(measured.im_err[k] * scale)
        trace.append({"t": t, "p_eff": p, "flagged": flagged, "source": "stationary"})
    series = CorrelatorSeries(label=measured.label, times=list(measured.times), re=re, im=im, re_err=re_err, im_err=im_err)
    return series, trace
