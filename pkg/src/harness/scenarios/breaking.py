# src/harness/scenarios/breaking.py
# --- agent_meta ---
# role: harness-scenarios-breaking
# owner: @backend
# contract: Сценарии разрыва струны: P(A_v = −1) на вершинах горба и резонанс рождения зарядов по h_E
# last_reviewed: 2026-10-16
# interfaces:
#   - Fig5BreakingScenario (fig5_breaking)
#   - Fig5ResonanceScenario (fig5_resonance)
#   - noisy_excitation(config, lattice, h_e, lam, psi0, vertices, key, rows, times) -> JobOutput
# --- /agent_meta ---

from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.circuits import build_trotter_step, trotter_series
from src.lattice import Lattice, VertexId, bump_sites
from src.mitigation import (
    PostselectCriteria,
    ReadoutModel,
    calibrate,
    depolarized_reference,
    distribution_from_shots,
    invert_readout,
    mitigate_series,
    parity_expectation,
    postselect,
)
from src.mitigation.errors import FullDepolarizationError
from src.noise import run_trajectory_series
from src.observables import EmptyTableError, Estimate, exact_excitation_probability, excitation_probability
from src.state_engine import ShotTable, StateVector, init_zero
from src.utils import get_logger

from ..interfaces import AbstractScenario
from ..models import Job, JobOutput
from ..options import ExperimentConfig
from ..preparation import noisy_prep_circuit, prepare_state

from .common import Rows, vertex_label

_log = get_logger(__name__)

_PINNED_BOTH = [{"side": "left", "row": 1, "col": 0}, {"side": "right", "row": 1, "col": 3}]


def _excitation_stages(
    table: ShotTable,
    lattice: Lattice,
    vertex: VertexId,
    config: ExperimentConfig,
    readout: Optional[ReadoutModel],
) -> Dict[str, Estimate]:
    out: Dict[str, Estimate] = {}
    try:
        out["raw"] = excitation_probability(table, lattice, vertex)
    except EmptyTableError:
        return out
    if not config.mitigation.postselect:
        return out
    kept = postselect(table, PostselectCriteria(ancilla_zero=True))
    if kept.n_shots == 0:
        return out
    out["postselected"] = excitation_probability(kept, lattice, vertex)
    if readout is not None:
        support = list(lattice.vertex_supports[lattice.vertex_index(vertex)])
        probs = invert_readout(distribution_from_shots(kept, support), support, readout)
        out["readout"] = Estimate((1.0 - parity_expectation(probs)) / 2.0, out["postselected"].stderr)
    return out


def _excitation_series(
    config: ExperimentConfig,
    lattice: Lattice,
    h_e: float,
    lam: float,
    psi0: StateVector,
    vertices: Sequence[VertexId],
    key: Tuple[Any, ...],
) -> Tuple[Dict[VertexId, List[Dict[str, Estimate]]], List[float]]:
    params = config.params_at(h_e, lam)
    spec = config.trotter_spec(h_e, lam)
    model = config.noise_for(*key)
    prep = noisy_prep_circuit(lattice, params, config.prep)
    readout = None
    if config.mitigation.readout:
        readout = ReadoutModel.from_noise(model, lattice.n_links)
    tables = run_trajectory_series(
        build_trotter_step(lattice, spec),
        psi0 if prep is None else init_zero(lattice.n_links),
        model,
        spec.n_steps,
        config.n_traj,
        config.shots_per_traj,
        prep=prep,
    )
    stages = {v: [_excitation_stages(table, lattice, v, config, readout) for table in tables] for v in vertices}
    retention = [postselect(t, PostselectCriteria(ancilla_zero=True)).retention for t in tables]
    return stages, retention


def noisy_excitation(
    config: ExperimentConfig,
    lattice: Lattice,
    h_e: float,
    lam: float,
    psi0: StateVector,
    vertices: Dict[str, VertexId],
    key: Tuple[Any, ...],
    rows: Rows,
    last_only: bool = False,
) -> JobOutput:
    """P(A_v = −1) по стадиям; p_eff из двойника с λ = 0, где заряды неподвижны.

    Деполяризованное значение вероятности возбуждения - 1/2.
    """
    times = config.times
    stages, retention = _excitation_series(config, lattice, h_e, lam, psi0, list(vertices.values()), key)
    if lam == 0.0:
        twin = stages
    else:
        twin, _ = _excitation_series(config, lattice, h_e, 0.0, psi0, list(vertices.values()), key + ("twin",))

    out = JobOutput()
    keep = range(len(times) - 1, len(times)) if last_only else range(len(times))
    o_dep = depolarized_reference("excitation_probability")
    for name, vertex in vertices.items():
        site = vertex_label(vertex)
        series = stages[vertex]
        for k in keep:
            for stage, est in series[k].items():
                out.rows.append(rows.make("p_excitation", est.value, variant=name, site=site, t=times[k], stderr=est.stderr, stage=stage))

        if not config.mitigation.rescale:
            continue
        best = next((s for s in ("readout", "postselected", "raw") if all(s in e for e in series + twin[vertex])), None)
        if best is None:
            _log.warning("Перемасштабирование %s пропущено: нет общей стадии во всех точках", name)
            continue
        o_initial = exact_excitation_probability(psi0, lattice, vertex)
        records = calibrate(times, [e[best].value for e in twin[vertex]], o_initial, o_dep, source="stationary")
        try:
            mitigated = mitigate_series([e[best].value for e in series], records, o_dep, [e[best].stderr for e in series])
        except FullDepolarizationError as e:
            _log.warning("Перемасштабирование %s невозможно: %s", name, e)
            continue
        for k in keep:
            out.rows.append(rows.make("p_excitation", mitigated[k].value, variant=name, site=site, t=times[k], stderr=mitigated[k].stderr, stage="mitigated"))
        out.meta.setdefault("p_eff", []).extend({"label": f"{name} h_e={h_e:g} lam={lam:g}", **r.model_dump()} for r in records)
    out.meta["retention"] = [{"label": f"h_e={h_e:g} lam={lam:g}", "t": t, "value": r} for t, r in zip(times, retention)]
    return out


class Fig5BreakingScenario(AbstractScenario):
    """Вероятность заряда на верхней (A1) и нижней (A2) вершинах горба; вакуумная база Avac."""

    name = "fig5_breaking"
    description = "Charge creation at the bump of a pinned string as a signature of string breaking"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3, "pinned_links": _PINNED_BOTH},
            "h_e_grid": [1.0, 2.0, 3.0],
            "lam_grid": [0.5],
            "dt": 0.2,
            "n_steps": 10,
            "prep": {"kind": "wala_string"},
            "seed": 41,
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "bump_vertices_start_empty",
                "kind": "abs_le",
                "observable": "p_excitation",
                "where": {"t": 0.0, "stage": "ideal", "variant": ["A1", "A2"]},
                "tol": 1e-10,
            },
            {"name": "bundle_integrity", "kind": "integrity"},
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [Job((lam, h), lambda h=h, lam=lam: self._point(config, lattice, h, lam)) for h, lam in config.grid]

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        params = config.params_at(h_e, lam)
        rows = Rows(self.name, h_e, lam, config.dt)
        sites = bump_sites(lattice)
        spec = config.trotter_spec(h_e, lam, mode=config.mode)
        psi0 = prepare_state(lattice, params, config.prep)
        vacuum = prepare_state(lattice, params, config.prep.model_copy(update={"kind": "wala", "path": None}))

        out = JobOutput()
        string_states = trotter_series(psi0, lattice, spec)
        vacuum_states = trotter_series(vacuum, lattice, spec)
        tracks = {"A1": (string_states, sites.a1), "A2": (string_states, sites.a2), "Avac": (vacuum_states, sites.a1)}
        for name, (states, vertex) in tracks.items():
            for t, s in zip(config.times, states):
                out.rows.append(rows.make("p_excitation", exact_excitation_probability(s, lattice, vertex), variant=name, site=vertex_label(vertex), t=t))

        if config.noise is not None:
            out.extend(noisy_excitation(config, lattice, h_e, lam, psi0, {"A1": sites.a1, "A2": sites.a2}, (lam, h_e), rows))
        return out


class Fig5ResonanceScenario(AbstractScenario):
    """P(A1) в конечный момент на сетке h_E: максимум рождения зарядов у резонанса."""

    name = "fig5_resonance"
    description = "Final-time charge creation at the bump versus the electric field"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3, "pinned_links": _PINNED_BOTH},
            "h_e_grid": [round(1.0 + 0.2 * i, 10) for i in range(11)],
            "lam_grid": [0.0, 0.25, 0.5],
            "dt": 0.2,
            "n_steps": 10,
            "prep": {"kind": "wala_string"},
            "seed": 43,
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "resonance_near_two",
                "kind": "argmax_within",
                "observable": "p_excitation",
                "where": {"variant": "A1", "lam": 0.5, "stage": "ideal"},
                "key": "h_e",
                "low": 1.6,
                "high": 2.4,
                "interior": True,
            },
            {
                "name": "far_site_has_no_resonance",
                "kind": "no_interior_peak",
                "observable": "p_excitation",
                "where": {"variant": "A2", "lam": 0.5, "stage": "ideal"},
                "other": {"variant": "A1", "lam": 0.5, "stage": "ideal"},
                "key": "h_e",
                "factor": 0.5,
            },
            {
                "name": "vacuum_has_no_resonance",
                "kind": "no_interior_peak",
                "observable": "p_excitation",
                "where": {"variant": "Avac", "lam": 0.5, "stage": "ideal"},
                "other": {"variant": "A1", "lam": 0.5, "stage": "ideal"},
                "key": "h_e",
                "factor": 0.5,
            },
            {
                "name": "far_site_tracks_vacuum",
                "kind": "series_agree",
                "observable": "p_excitation",
                "where": {"variant": "A2", "lam": 0.5, "stage": "ideal"},
                "other": {"variant": "Avac", "lam": 0.5, "stage": "ideal"},
                "key": "h_e",
                "factor": 2.0,
            },
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [Job((lam, h), lambda h=h, lam=lam: self._point(config, lattice, h, lam)) for h, lam in config.grid]

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        params = config.params_at(h_e, lam)
        rows = Rows(self.name, h_e, lam, config.dt)
        sites = bump_sites(lattice)
        psi0 = prepare_state(lattice, params, config.prep)
        vacuum = prepare_state(lattice, params, config.prep.model_copy(update={"kind": "wala", "path": None}))
        spec = config.trotter_spec(h_e, lam, mode=config.mode)
        final = trotter_series(psi0, lattice, spec)[-1]
        vacuum_final = trotter_series(vacuum, lattice, spec)[-1]
        t_final = config.times[-1]

        out = JobOutput()
        tracks = (("A1", final, sites.a1), ("A2", final, sites.a2), ("Avac", vacuum_final, sites.a1))
        for name, state, vertex in tracks:
            value = exact_excitation_probability(state, lattice, vertex)
            out.rows.append(rows.make("p_excitation", value, variant=name, site=vertex_label(vertex), t=t_final))
        if config.noise is not None:
            out.extend(
                noisy_excitation(config, lattice, h_e, lam, psi0, {"A1": sites.a1}, (lam, h_e), rows, last_only=True)
            )
        return out
