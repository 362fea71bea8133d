# src/harness/scenarios/charges.py
# --- agent_meta ---
# role: harness-scenarios-charges
# owner: @backend
# contract: Сценарии динамики зарядов: расстояние пары, суперпозиция струн, условные карты, одиночный заряд, модели деполяризации
# last_reviewed: 2026-10-16
# interfaces:
#   - Fig3ChargesScenario (fig3_charges)
#   - Fig3SuperpositionScenario (fig3_superposition)
#   - Fig3ConditionalScenario (fig3_conditional)
#   - SingleChargeQuenchScenario (s4_single_charge_quench)
#   - DepolModelsScenario (edfig4_depol_models)
# --- /agent_meta ---

from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.circuits import build_trotter_step, trotter_series
from src.lattice import (
    Lattice,
    central_horizontal_link,
    default_superposition_paths,
    manhattan_distance,
    mixed_state_mean_separation,
    path_endpoints,
)
from src.mitigation import PostselectCriteria, depolarized_reference, global_depolarize, postselect
from src.noise import run_trajectory_series
from src.observables import (
    ConditionalMap,
    EmptyTableError,
    conditional_map,
    exact_conditional_map,
    exact_excitation_distance,
    exact_heatmap,
    exact_mean_separation,
    exact_z_map,
)
from src.reference import build_hamiltonian, evolve_series
from src.state_engine import PauliString, StateVector, fidelity, init_zero, pauli_apply

from ..interfaces import AbstractScenario
from ..models import Job, JobOutput
from ..options import ExperimentConfig
from ..preparation import noisy_prep_circuit, prepare_state
from .common import Rows, link_label, noisy_separation, vertex_label

_CHARGE_GRID = [0.0, 0.3, 0.6, 1.0, 2.0]


def _separation_rows(states: Sequence[StateVector], lattice: Lattice, times: Sequence[float], rows: Rows, variant: str = "") -> JobOutput:
    out = JobOutput()
    separations = []
    for t, state in zip(times, states):
        sep = exact_mean_separation(state, lattice)
        separations.append(sep)
        out.rows.append(rows.make("separation", sep, variant=variant, t=t))
        for vertex, a_v in exact_heatmap(state, lattice).items():
            out.rows.append(rows.make("heatmap", a_v, variant=variant, site=vertex_label(vertex), t=t))
    out.rows.append(rows.make("separation_time_average", float(np.mean(separations)), variant=variant))
    return out


class Fig3ChargesScenario(AbstractScenario):
    """Расстояние пары зарядов и карты <A_v> после рождения пары на центральном ребре."""

    name = "fig3_charges"
    description = "Charge-pair separation and vertex heatmaps across the confinement transition"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3},
            "h_e_grid": _CHARGE_GRID,
            "lam_grid": [0.25],
            "dt": 0.3,
            "n_steps": 9,
            "prep": {"kind": "wala_pair"},
            "seed": 3,
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "pair_starts_adjacent",
                "kind": "abs_le",
                "observable": "separation",
                "where": {"stage": "ideal", "t": 0.0},
                "target": 1.0,
                "tol": 1e-10,
            },
            {
                "name": "confined_average_below_mixed_state",
                "kind": "between",
                "observable": "separation_average_to_mixed",
                "where": {"h_e": 2.0},
                "low": 0.0,
                "high": 0.75,
            },
            {"name": "bundle_integrity", "kind": "integrity"},
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [Job((lam, h), lambda h=h, lam=lam: self._point(config, lattice, h, lam)) for h, lam in config.grid]

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        params = config.params_at(h_e, lam)
        rows = Rows(self.name, h_e, lam, config.dt)
        psi0 = prepare_state(lattice, params, config.prep)
        states = trotter_series(psi0, lattice, config.trotter_spec(h_e, lam, mode=config.mode))
        out = _separation_rows(states, lattice, config.times, rows)
        average = next(r.value for r in out.rows if r.observable == "separation_time_average")
        # доля от расстояния полностью смешанного состояния: 7/3 на 4×3, 5/3 на 2×3
        mixed = float(mixed_state_mean_separation(lattice.lx, lattice.ly))
        out.rows.append(rows.make("separation_average_to_mixed", average / mixed))
        if config.noise is not None:
            prep = noisy_prep_circuit(lattice, params, config.prep)
            out.extend(noisy_separation(config, lattice, h_e, lam, psi0, (lam, h_e), rows, prep=prep))
        return out


class Fig3SuperpositionScenario(AbstractScenario):
    """Суперпозиции двух X-струн ψ±: расстояние и карты зарядов по веткам."""

    name = "fig3_superposition"
    description = "Dynamics of a superposition of two distance-2 string states"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3},
            "h_e_grid": [0.6, 2.0],
            "lam_grid": [0.25],
            "dt": 0.3,
            "n_steps": 9,
            "prep": {"kind": "wala_superposition"},
            "seed": 5,
            "extra": {"branches": ["+", "-"]},
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "touched_vertices_start_unpolarized",
                "kind": "abs_le",
                "observable": "touched_vertex_abs_max",
                "where": {"t": 0.0},
                "tol": 1e-10,
            },
            {
                "name": "pair_starts_at_distance_two",
                "kind": "abs_le",
                "observable": "separation",
                "where": {"stage": "ideal", "t": 0.0},
                "target": 2.0,
                "tol": 1e-10,
            },
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [
            Job((lam, h, branch), lambda h=h, lam=lam, branch=branch: self._point(config, lattice, h, lam, branch))
            for h, lam in config.grid
            for branch in config.option("branches", ["+", "-"])
        ]

    def _touched(self, lattice: Lattice, config: ExperimentConfig) -> List[tuple]:
        if config.prep.s1 is None or config.prep.s2 is None:
            s1, s2 = default_superposition_paths(lattice)
        else:
            s1, s2 = config.prep.s1, config.prep.s2
        # вершина, общая двум струнам, возбуждена в обеих ветках
        return sorted(set(path_endpoints(lattice, s1)) ^ set(path_endpoints(lattice, s2)))

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float, branch: str) -> JobOutput:
        params = config.params_at(h_e, lam)
        prep = config.prep.model_copy(update={"branch": branch})
        variant = f"psi{branch}"
        rows = Rows(self.name, h_e, lam, config.dt)
        psi0 = prepare_state(lattice, params, prep)
        states = trotter_series(psi0, lattice, config.trotter_spec(h_e, lam, mode=config.mode))

        out = _separation_rows(states, lattice, config.times, rows, variant=variant)
        touched = self._touched(lattice, config)
        for t, state in zip(config.times, states):
            heat = exact_heatmap(state, lattice)
            out.rows.append(rows.make("touched_vertex_abs_max", max(abs(heat[v]) for v in touched), variant=variant, t=t))
        if config.noise is not None:
            out.extend(noisy_separation(config, lattice, h_e, lam, psi0, (lam, h_e, branch), rows, variant=variant))
        return out


class Fig3ConditionalScenario(AbstractScenario):
    """Условные карты: где партнёр, если заряд сидит на опорной вершине пары."""

    name = "fig3_conditional"
    description = "Conditional partner maps of a charge pair in the deconfined and confined regimes"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3},
            "h_e_grid": [0.0, 2.0],
            "lam_grid": [0.25],
            "dt": 0.3,
            "n_steps": 9,
            "prep": {"kind": "wala_pair"},
            "seed": 13,
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "confined_partner_stays_closer",
                "kind": "less_than_series",
                "observable": "partner_distance_time_average",
                "where": {"h_e": 2.0, "stage": "ideal"},
                "other": {"h_e": 0.0, "stage": "ideal"},
                "key": "variant",
            },
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [Job((lam, h), lambda h=h, lam=lam: self._point(config, lattice, h, lam)) for h, lam in config.grid]

    def _reference(self, lattice: Lattice, config: ExperimentConfig) -> tuple:
        link = central_horizontal_link(lattice) if config.prep.link is None else lattice.resolve(config.prep.link)
        return lattice.incident_vertices(link)[0]

    def _emit(self, cmap: ConditionalMap, lattice: Lattice, rows: Rows, t: float, stage: str, out: JobOutput) -> Optional[float]:
        out.rows.append(rows.make("p_reference", cmap.p_reference.value, t=t, stderr=cmap.p_reference.stderr, stage=stage))
        if cmap.partner is None:
            return None
        for vertex, weight in cmap.partner.items():
            out.rows.append(rows.make("conditional", weight, site=vertex_label(vertex), t=t, stage=stage))
        distance = sum(w * manhattan_distance(v, cmap.reference) for v, w in cmap.partner.items())
        out.rows.append(rows.make("partner_distance", distance, t=t, stage=stage))
        return distance

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        params = config.params_at(h_e, lam)
        rows = Rows(self.name, h_e, lam, config.dt)
        reference = self._reference(lattice, config)
        psi0 = prepare_state(lattice, params, config.prep)
        states = trotter_series(psi0, lattice, config.trotter_spec(h_e, lam, mode=config.mode))

        out = JobOutput()
        distances = []
        for t, state in zip(config.times, states):
            d = self._emit(exact_conditional_map(state, lattice, reference), lattice, rows, t, "ideal", out)
            if d is not None:
                distances.append(d)
        if distances:
            out.rows.append(rows.make("partner_distance_time_average", float(np.mean(distances)), variant="window"))

        if config.noise is not None:
            spec = config.trotter_spec(h_e, lam)
            tables = run_trajectory_series(
                build_trotter_step(lattice, spec),
                init_zero(lattice.n_links),
                config.noise_for(lam, h_e),
                spec.n_steps,
                config.n_traj,
                config.shots_per_traj,
                prep=noisy_prep_circuit(lattice, params, config.prep),
            )
            for t, table in zip(config.times, tables):
                stage = "raw"
                if config.mitigation.postselect:
                    table, stage = postselect(table, PostselectCriteria(ancilla_zero=True)), "postselected"
                try:
                    self._emit(conditional_map(table, lattice, reference), lattice, rows, t, stage, out)
                except EmptyTableError:
                    self._log.warning("Нет выстрелов для условной карты при t=%.2f", t)
        return out


class SingleChargeQuenchScenario(AbstractScenario):
    """Одиночный заряд на краю через закреплённое ребро; эквивалентность квенчу J_E -> -J_E."""

    name = "s4_single_charge_quench"
    description = "Single edge charge created through a pinned link, checked against the sign-flip quench"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3, "pinned_links": [{"side": "left", "row": 1, "col": 0}]},
            "h_e_grid": [0.0, 0.3, 0.6, 0.8, 2.0],
            "lam_grid": [0.25],
            "dt": 0.3,
            "n_steps": 9,
            "prep": {"kind": "wala_pair", "link": "pinned-left(1,0)"},
            "seed": 17,
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "pinned_flip_equals_sign_quench",
                "kind": "abs_le",
                "observable": "quench_infidelity",
                "tol": 1e-10,
            },
            {
                "name": "charge_starts_on_edge",
                "kind": "abs_le",
                "observable": "excitation_distance",
                "where": {"t": 0.0},
                "tol": 1e-10,
            },
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [Job((lam, h), lambda h=h, lam=lam: self._point(config, lattice, h, lam)) for h, lam in config.grid]

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        params = config.params_at(h_e, lam)
        rows = Rows(self.name, h_e, lam, config.dt)
        pinned = lattice.pinned_link_ids[0] if config.prep.link is None else lattice.resolve(config.prep.link)
        origin = lattice.incident_vertices(pinned)[0]
        psi0 = prepare_state(lattice, params, config.prep)
        spec = config.trotter_spec(h_e, lam, mode=config.mode)
        states = trotter_series(psi0, lattice, spec)

        out = JobOutput()
        for t, state in zip(config.times, states):
            out.rows.append(rows.make("excitation_distance", exact_excitation_distance(state, lattice, origin), t=t))
            for vertex, a_v in exact_heatmap(state, lattice).items():
                out.rows.append(rows.make("heatmap", a_v, site=vertex_label(vertex), t=t))
            for link, z in exact_z_map(state, lattice.n_links).items():
                out.rows.append(rows.make("z_map", z, site=link_label(lattice, link), t=t))

        # X_p U' ψ_vac против U X_p ψ_vac, U' с J_E -> -J_E на вершине заряда
        flip = PauliString.x_on([pinned])
        vacuum = prepare_state(lattice, params, config.prep.model_copy(update={"kind": "wala", "link": None}))
        quenched = params.with_fields(vertex_sign_overrides={**params.vertex_sign_overrides, origin: -params.sign_of(origin)})
        quench_states = trotter_series(vacuum, lattice, config.trotter_spec(h_e, lam, mode=config.mode, params=quenched))
        for t, direct, quench in zip(config.times, states, quench_states):
            value = max(0.0, 1.0 - fidelity(direct, pauli_apply(quench, flip)))
            out.rows.append(rows.make("quench_infidelity", value, t=t))
        return out


class DepolModelsScenario(AbstractScenario):
    """Малая решётка: контраст расстояния по h_E (Троттер против точной эволюции)
    и дрейф к смешанному состоянию при локальном и глобальном шуме."""

    name = "edfig4_depol_models"
    description = "Separation contrast on a small lattice and local versus global depolarizing drift"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 2, "ly": 3},
            "h_e_grid": [0.0, 0.25, 2.25],
            "lam_grid": [0.25],
            "dt": 0.3,
            "n_steps": 10,
            "prep": {"kind": "wala_pair"},
            "noise": {},
            "seed": 19,
            "extra": {"contrast_dt": 0.1, "contrast_t": 4.0, "window": [1.0, 4.0]},
        }

    def criteria(self) -> List[Dict[str, Any]]:
        pointwise = {
            "kind": "less_than_series",
            "observable": "separation",
            "key_min": 1.0,
            "key_max": 4.0,
        }
        return [
            {
                **pointwise,
                "name": "confined_pair_stays_closer",
                "where": {"h_e": 2.25, "lam": 0.25, "variant": "exact"},
                "other": {"h_e": 0.0, "lam": 0.25, "variant": "exact"},
            },
            {
                **pointwise,
                "name": "confined_pair_stays_closer_trotter",
                "where": {"h_e": 2.25, "lam": 0.25, "variant": "trotter"},
                "other": {"h_e": 0.0, "lam": 0.25, "variant": "trotter"},
            },
            {
                "name": "trotter_tracks_exact",
                "kind": "abs_le",
                "observable": "trotter_exact_deviation",
                "tol": 0.02,
            },
            {
                "name": "charges_conserved_without_hopping",
                "kind": "abs_le",
                "observable": "conservation_drift",
                "tol": 1e-9,
            },
            {
                "name": "local_noise_drifts_up",
                "kind": "non_decreasing",
                "observable": "separation",
                "where": {"h_e": 0.0, "variant": "local", "stage": "postselected"},
                "sigma": 3.0,
            },
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        jobs = [
            Job(("contrast", h), lambda h=h: self._contrast(config, lattice, h))
            for h in config.h_e_grid
        ]
        jobs += [Job(("conservation", h), lambda h=h: self._conservation(config, lattice, h)) for h in config.h_e_grid]
        if config.noise is not None:
            jobs += [Job(("drift", h), lambda h=h: self._drift(config, lattice, h)) for h in config.h_e_grid]
        return jobs

    def _contrast(self, config: ExperimentConfig, lattice: Lattice, h_e: float) -> JobOutput:
        lam = config.lam_grid[0]
        dt = float(config.option("contrast_dt", 0.1))
        n_steps = int(round(float(config.option("contrast_t", 4.0)) / dt))
        low, high = config.option("window", [1.0, 4.0])
        params = config.params_at(h_e, lam)
        rows = Rows(self.name, h_e, lam, dt)
        psi0 = prepare_state(lattice, params, config.prep)
        times = [k * dt for k in range(n_steps + 1)]

        trotter = trotter_series(psi0, lattice, config.trotter_spec(h_e, lam, dt=dt, n_steps=n_steps, mode="direct"))
        exact = evolve_series(psi0, build_hamiltonian(lattice, params), dt, n_steps)
        out = JobOutput()
        window = {"trotter": [], "exact": []}
        deviation = 0.0
        for t, s_trotter, s_exact in zip(times, trotter, exact):
            a, b = exact_mean_separation(s_trotter, lattice), exact_mean_separation(s_exact, lattice)
            out.rows.append(rows.make("separation", a, variant="trotter", t=t))
            out.rows.append(rows.make("separation", b, variant="exact", t=t))
            deviation = max(deviation, abs(a - b))
            if low - 1e-9 <= t <= high + 1e-9:
                window["trotter"].append(a)
                window["exact"].append(b)
        out.rows.append(rows.make("trotter_exact_deviation", deviation))
        for variant, values in window.items():
            if values:
                out.rows.append(rows.make("separation_window_mean", float(np.mean(values)), variant=variant))
        return out

    def _drift(self, config: ExperimentConfig, lattice: Lattice, h_e: float) -> JobOutput:
        """λ = 0: идеальное расстояние постоянно, весь дрейф создаёт шум."""
        params = config.params_at(h_e, 0.0)
        rows = Rows(self.name, h_e, 0.0, config.dt)
        psi0 = prepare_state(lattice, params, config.prep)
        prep = noisy_prep_circuit(lattice, params, config.prep)
        out = noisy_separation(config, lattice, h_e, 0.0, psi0, ("drift", h_e), rows, variant="local", prep=prep)

        spec = config.trotter_spec(h_e, 0.0)
        n_ent = build_trotter_step(lattice, spec).entangling_count
        n_prep = prep.entangling_count if prep is not None else 0
        ideal = [exact_mean_separation(s, lattice) for s in trotter_series(psi0, lattice, spec.model_copy(update={"mode": "direct"}))]
        o_dep = depolarized_reference("separation", lattice)
        p2 = config.noise.p2
        for k, (t, value) in enumerate(zip(config.times, ideal)):
            p = 1.0 - (1.0 - p2) ** (n_prep + n_ent * k)
            out.rows.append(rows.make("separation", global_depolarize(value, p, o_dep), variant="global", t=t, stage="raw"))
            out.rows.append(rows.make("global_p", p, variant="global", t=t))
        out.rows.append(rows.make("mixed_state_separation", float(mixed_state_mean_separation(lattice.lx, lattice.ly))))
        return out

    def _conservation(self, config: ExperimentConfig, lattice: Lattice, h_e: float) -> JobOutput:
        """λ = 0 без шума: каждое ⟨A_v⟩ и среднее расстояние пары неизменны во времени."""
        params = config.params_at(h_e, 0.0)
        rows = Rows(self.name, h_e, 0.0, config.dt)
        psi0 = prepare_state(lattice, params, config.prep)
        spec = config.trotter_spec(h_e, 0.0, mode="direct")
        series = {
            "trotter": trotter_series(psi0, lattice, spec),
            "exact": evolve_series(psi0, build_hamiltonian(lattice, params), config.dt, config.n_steps),
        }
        out = JobOutput()
        for variant, states in series.items():
            charge0, sep0 = exact_heatmap(states[0], lattice), exact_mean_separation(states[0], lattice)
            charge_drift = max(
                abs(value - charge0[v]) for s in states for v, value in exact_heatmap(s, lattice).items()
            )
            sep_drift = max(abs(exact_mean_separation(s, lattice) - sep0) for s in states)
            out.rows.append(rows.make("conservation_drift", charge_drift, variant=f"vertex_charge_{variant}"))
            out.rows.append(rows.make("conservation_drift", sep_drift, variant=f"separation_{variant}"))
        return out
