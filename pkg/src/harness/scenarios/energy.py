# src/harness/scenarios/energy.py
# --- agent_meta ---
# role: harness-scenarios-energy
# owner: @backend
# contract: Сценарии основного состояния: энергии анзацев против ED, средние членов WALA и учёт гейтов, качество WALA
# last_reviewed: 2026-10-16
# interfaces:
#   - Fig2EnergyScenario (fig2_energy)
#   - Fig2WalaTermsScenario (fig2_wala_terms)
#   - WalaQualityScenario (wala_quality)
# --- /agent_meta ---

from __future__ import annotations

import math
from typing import Any, Dict, List

import numpy as np

from src.circuits import TrotterSpec, build_trotter_step, build_wala, execute
from src.lattice import LatticeSpec, Lattice, build_lattice, entangling_count_per_cycle
from src.reference import build_hamiltonian, energy, ground_state, wala_quality, wala_state
from src.state_engine import PauliString, expectation, init_zero
from src.wala import analytic_expectations, optimize_theta, theta_thermo

from ..interfaces import AbstractScenario
from ..models import Job, JobOutput
from ..options import ExperimentConfig
from .common import Rows

_H_GRID = [0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]


class Fig2EnergyScenario(AbstractScenario):
    """Ошибка энергии WALA(θ*), торического и поляризованного состояний относительно ED."""

    name = "fig2_energy"
    description = "Energy error of WALA, toric and polarized ansatzes against the exact ground state"

    def base_config(self) -> Dict[str, Any]:
        return {"lattice": {"lx": 4, "ly": 3}, "h_e_grid": _H_GRID, "lam_grid": [0.0], "n_steps": 0, "seed": 2023}

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "wala_not_worse_than_toric",
                "kind": "less_than_series",
                "observable": "energy_error",
                "where": {"variant": "wala"},
                "other": {"variant": "toric"},
                "key": "h_e",
                "tol": 1e-9,
            },
            {
                "name": "wala_not_worse_than_polarized",
                "kind": "less_than_series",
                "observable": "energy_error",
                "where": {"variant": "wala"},
                "other": {"variant": "polarized"},
                "key": "h_e",
                "tol": 1e-9,
            },
            {"name": "wala_energy_matches_analytic", "kind": "abs_le", "observable": "wala_analytic_deviation", "tol": 1e-8},
            {"name": "bundle_integrity", "kind": "integrity"},
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [Job((lam, h), lambda h=h, lam=lam: self._point(config, lattice, h, lam)) for h, lam in config.grid]

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        params = config.params_at(h_e, lam)
        rows = Rows(self.name, h_e, lam)
        ham = build_hamiltonian(lattice, params)
        e0, _ = ground_state(ham, seed=config.seed_for("ground", h_e, lam))
        solution = optimize_theta(lattice.lx, lattice.ly, params)

        out = JobOutput()
        out.rows.append(rows.make("energy", e0, variant="exact"))
        for variant, theta in (("wala", solution.theta), ("toric", math.pi / 2), ("polarized", 0.0)):
            e = energy(wala_state(lattice, theta), ham)
            out.rows.append(rows.make("energy", e, variant=variant))
            out.rows.append(rows.make("energy_error", e - e0, variant=variant))
            if variant == "wala":
                out.rows.append(rows.make("wala_analytic_deviation", abs(e - solution.energy)))
        out.rows.append(rows.make("theta", solution.theta, variant="finite"))
        out.rows.append(rows.make("theta", theta_thermo(h_e, params.j_m), variant="thermodynamic"))
        return out


class Fig2WalaTermsScenario(AbstractScenario):
    """Средние членов гамильтониана на схеме WALA против аналитики и учёт запутывающих гейтов."""

    name = "fig2_wala_terms"
    description = "Simulated WALA term averages versus closed forms, plus entangling-gate accounting"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3},
            "n_steps": 9,
            "dt": 0.3,
            "seed": 7,
            "extra": {"theta_grid": [0.2, 0.9, math.pi / 2], "accounting_sizes": [2, 3, 4]},
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {"name": "wala_terms_match_closed_forms", "kind": "abs_le", "observable": "wala_term_deviation", "tol": 1e-10},
            {"name": "entangling_count_formula", "kind": "abs_le", "observable": "trotter_entangling_deviation", "tol": 0.0},
            {
                "name": "total_entangling_budget",
                "kind": "between",
                "observable": "gate_total",
                "where": {"variant": "total"},
                "low": 1050,
                "high": 1100,
            },
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        jobs = [
            Job(("theta", float(theta)), lambda theta=float(theta): self._terms(lattice, theta))
            for theta in config.option("theta_grid", [])
        ]
        jobs.append(Job(("gates", 0.0), lambda: self._accounting(config, lattice)))
        return jobs

    def _terms(self, lattice: Lattice, theta: float) -> JobOutput:
        state = execute(build_wala(lattice, theta, mode="ancilla"), init_zero(lattice.n_links))
        expected = analytic_expectations(theta)
        rows = Rows(self.name)
        site = f"theta={theta:.6f}"

        fields = [l for l in range(lattice.n_links) if l not in lattice.pinned_link_ids]
        measured = {
            "A_v": [expectation(state, PauliString.z_on(s)) for s in lattice.vertex_supports],
            "B_p": [expectation(state, PauliString.x_on(s)) for s in lattice.plaquette_supports],
            "Z_bulk": [expectation(state, PauliString.z_on([l])) for l in fields if lattice.plaquette_multiplicity(l) == 2],
            "Z_edge": [expectation(state, PauliString.z_on([l])) for l in fields if lattice.is_edge_link(l)],
            "X": [expectation(state, PauliString.x_on([l])) for l in fields],
        }
        closed = {
            "A_v": expected.a_v,
            "B_p": expected.b_p,
            "Z_bulk": expected.z_bulk,
            "Z_edge": expected.z_boundary,
            "X": expected.x_link,
        }
        out = JobOutput()
        for term, values in measured.items():
            if not values:
                continue
            out.rows.append(rows.make("wala_term", float(np.mean(values)), variant=term, site=site))
            out.rows.append(rows.make("wala_term_analytic", closed[term], variant=term, site=site))
            deviation = max(abs(v - closed[term]) for v in values)
            out.rows.append(rows.make("wala_term_deviation", deviation, variant=term, site=site))
        return out

    def _accounting(self, config: ExperimentConfig, lattice: Lattice) -> JobOutput:
        rows = Rows(self.name, dt=config.dt)
        out = JobOutput()
        sizes = config.option("accounting_sizes", [2, 3, 4])
        for lx in sizes:
            for ly in sizes:
                sub = build_lattice(LatticeSpec(lx=lx, ly=ly))
                step = build_trotter_step(sub, TrotterSpec(dt=config.dt, mode="gate_level"))
                formula = entangling_count_per_cycle(lx, ly)
                site = f"{lx}x{ly}"
                out.rows.append(rows.make("trotter_entangling", step.entangling_count, variant="compiled", site=site))
                out.rows.append(rows.make("trotter_entangling", formula, variant="formula", site=site))
                out.rows.append(rows.make("trotter_entangling_deviation", abs(step.entangling_count - formula), site=site))

        step = build_trotter_step(lattice, TrotterSpec(dt=config.dt, mode="gate_level"))
        prep = build_wala(lattice, math.pi / 2, mode="ancilla").entangling_count
        trotter = config.n_steps * step.entangling_count
        site = f"{lattice.lx}x{lattice.ly}"
        out.rows.append(rows.make("gate_total", prep, variant="prep", site=site))
        out.rows.append(rows.make("gate_total", trotter, variant="trotter", site=site))
        out.rows.append(rows.make("gate_total", prep + trotter, variant="total", site=site))
        return out


class WalaQualityScenario(AbstractScenario):
    """Инфиделити и относительная ошибка энергии WALA(θ*) против ED на сетке h_E × λ."""

    name = "wala_quality"
    description = "WALA infidelity and energy error against exact diagonalization"

    def base_config(self) -> Dict[str, Any]:
        return {"lattice": {"lx": 4, "ly": 3}, "h_e_grid": _H_GRID, "lam_grid": [0.0, 0.25], "n_steps": 0, "seed": 11}

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {"name": "infidelity_lambda_0", "kind": "between", "observable": "wala_infidelity", "where": {"lam": 0.0}, "low": 0.0, "high": 1e-2},
            {"name": "infidelity_lambda_025", "kind": "between", "observable": "wala_infidelity", "where": {"lam": 0.25}, "low": 0.0, "high": 1e-1},
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [Job((lam, h), lambda h=h, lam=lam: self._point(config, lattice, h, lam)) for h, lam in config.grid]

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        quality = wala_quality(lattice, config.params_at(h_e, lam))
        rows = Rows(self.name, h_e, lam)
        return JobOutput(rows=[
            rows.make("wala_infidelity", quality.infidelity),
            rows.make("wala_energy_error", quality.relative_energy_error),
            rows.make("theta", quality.theta),
            rows.make("energy", quality.e_exact, variant="exact"),
            rows.make("energy", quality.e_wala, variant="wala"),
        ])
