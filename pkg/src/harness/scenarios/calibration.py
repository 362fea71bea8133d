# src/harness/scenarios/calibration.py
# --- agent_meta ---
# role: harness-scenarios-calibration
# owner: @backend
# contract: Калибровочные сценарии: порядок ошибки Троттера и её влияние на наблюдаемые, эхо Лошмидта по глубине
# last_reviewed: 2026-10-16
# interfaces:
#   - TrotterErrorScenario (trotter_error_scan)
#   - LoschmidtCalibrationScenario (loschmidt_calibration)
# --- /agent_meta ---

from __future__ import annotations

from typing import Any, Dict, List, Sequence

from src.circuits import build_trotter_step, trotter_series
from src.lattice import Lattice, bump_sites
from src.mitigation import loschmidt_echo
from src.noise import NoiseModel
from src.observables import exact_excitation_probability, exact_mean_separation
from src.reference import build_hamiltonian, evolve_series, trotter_error_scan

from ..interfaces import AbstractScenario
from ..models import Job, JobOutput
from ..options import ExperimentConfig, PrepSpec
from ..preparation import prep_circuit, prepare_state
from .common import Rows, vertex_label


class TrotterErrorScenario(AbstractScenario):
    """Ошибка Троттера: наклоны по dt, отклонение расстояния пары от точной эволюции, P(A1) при разных dt."""

    name = "trotter_error_scan"
    description = "Trotter error scaling and its effect on separation and bump-excitation observables"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {
                "lx": 3,
                "ly": 3,
                "pinned_links": [{"side": "left", "row": 1, "col": 0}, {"side": "right", "row": 1, "col": 2}],
            },
            "h_e_grid": [2.0],
            "lam_grid": [0.25],
            "prep": {"kind": "wala_pair"},
            "seed": 47,
            "extra": {
                "scaling_dts": [0.05, 0.1, 0.2],
                "scaling_t": 1.0,
                "separation_dts": [0.1, 0.3, 0.5],
                "robust_dts": [0.3, 0.5],
                "separation_t": 3.0,
                "a1_dts": [0.1, 0.2, 0.3],
                "a1_t": 1.8,
                "a1_lam": 0.5,
            },
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "first_order_step_error",
                "kind": "abs_le",
                "observable": "trotter_slope",
                "where": {"variant": "step"},
                "target": 2.0,
                "tol": 0.3,
            },
            {
                "name": "smaller_step_tracks_exact_better",
                "kind": "less_than_series",
                "observable": "separation_deviation",
                "where": {"dt": 0.3, "variant": "pair"},
                "other": {"dt": 0.5, "variant": "pair"},
                "key": "h_e",
            },
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        jobs = []
        for h, lam in config.grid:
            jobs.append(Job((lam, h, "scaling"), lambda h=h, lam=lam: self._scaling(config, lattice, h, lam)))
            jobs.append(Job((lam, h, "separation"), lambda h=h, lam=lam: self._separation(config, lattice, h, lam)))
            jobs.append(Job((lam, h, "a1"), lambda h=h, lam=lam: self._bump(config, lattice, h)))
        return jobs

    def _scaling(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        params = config.params_at(h_e, lam)
        psi0 = prepare_state(lattice, params, config.prep)
        scan = trotter_error_scan(lattice, params, config.option("scaling_dts"), config.option("scaling_t"), state=psi0)
        out = JobOutput()
        for point in scan.points:
            rows = Rows(self.name, h_e, lam, point.dt)
            out.rows.append(rows.make("trotter_error", point.step_error, variant="step", t=scan.t))
            out.rows.append(rows.make("trotter_error", point.global_error, variant="global", t=scan.t))
        rows = Rows(self.name, h_e, lam)
        out.rows.append(rows.make("trotter_slope", scan.step_slope, variant="step", t=scan.t))
        out.rows.append(rows.make("trotter_slope", scan.global_slope, variant="global", t=scan.t))
        return out

    def _deviation(
        self,
        config: ExperimentConfig,
        lattice: Lattice,
        prep: PrepSpec,
        h_e: float,
        lam: float,
        dts: Sequence[float],
        variant: str,
    ) -> JobOutput:
        params = config.params_at(h_e, lam)
        psi0 = prepare_state(lattice, params, prep)
        hamiltonian = build_hamiltonian(lattice, params)
        out = JobOutput()
        for dt in dts:
            n_steps = max(1, int(round(config.option("separation_t") / dt)))
            rows = Rows(self.name, h_e, lam, dt)
            trotter = trotter_series(psi0, lattice, config.trotter_spec(h_e, lam, dt=dt, n_steps=n_steps, mode="direct"))
            exact = evolve_series(psi0, hamiltonian, dt, n_steps)
            worst = 0.0
            for k, (a, b) in enumerate(zip(trotter, exact)):
                sep_t, sep_e = exact_mean_separation(a, lattice), exact_mean_separation(b, lattice)
                out.rows.append(rows.make("separation", sep_t, variant=f"{variant}/trotter", t=k * dt))
                out.rows.append(rows.make("separation", sep_e, variant=f"{variant}/exact", t=k * dt))
                worst = max(worst, abs(sep_t - sep_e))
            out.rows.append(rows.make("separation_deviation", worst, variant=variant))
        return out

    def _separation(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        out = self._deviation(config, lattice, config.prep, h_e, lam, config.option("separation_dts"), "pair")
        robust = PrepSpec(kind="wala_superposition")
        out.extend(self._deviation(config, lattice, robust, h_e, lam, config.option("robust_dts"), "superposition"))
        return out

    def _bump(self, config: ExperimentConfig, lattice: Lattice, h_e: float) -> JobOutput:
        lam = float(config.option("a1_lam"))
        t_final = float(config.option("a1_t"))
        params = config.params_at(h_e, lam)
        a1 = bump_sites(lattice).a1
        psi0 = prepare_state(lattice, params, PrepSpec(kind="wala_string"))
        hamiltonian = build_hamiltonian(lattice, params)
        out = JobOutput()
        for dt in config.option("a1_dts"):
            n_steps = max(1, int(round(t_final / dt)))
            rows = Rows(self.name, h_e, lam, dt)
            trotter = trotter_series(psi0, lattice, config.trotter_spec(h_e, lam, dt=dt, n_steps=n_steps, mode="direct"))[-1]
            exact = evolve_series(psi0, hamiltonian, dt, n_steps)[-1]
            p_t = exact_excitation_probability(trotter, lattice, a1)
            p_e = exact_excitation_probability(exact, lattice, a1)
            site = vertex_label(a1)
            out.rows.append(rows.make("p_a1", p_t, variant="trotter", site=site, t=n_steps * dt))
            out.rows.append(rows.make("p_a1", p_e, variant="exact", site=site, t=n_steps * dt))
            out.rows.append(rows.make("p_a1_deviation", abs(p_t - p_e), site=site, t=n_steps * dt))
        return out


class LoschmidtCalibrationScenario(AbstractScenario):
    """p_eff из эха Лошмидта U·U† для подготовки и k шагов Троттера."""

    name = "loschmidt_calibration"
    description = "Loschmidt-echo estimate of the effective depolarizing probability versus depth"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 2, "ly": 3},
            "h_e_grid": [0.6],
            "lam_grid": [0.25],
            "dt": 0.3,
            "n_steps": 5,
            "prep": {"kind": "wala_pair"},
            "noise": {},
            "seed": 53,
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {"name": "p_eff_grows_with_depth", "kind": "non_decreasing", "observable": "p_eff", "tol": 0.05},
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        if config.noise is None:
            self._log.warning("Эхо Лошмидта без модели шума: p_eff будет нулевым")
        return [
            Job((lam, h, k), lambda h=h, lam=lam, k=k: self._depth(config, lattice, h, lam, k))
            for h, lam in config.grid
            for k in range(config.n_steps + 1)
        ]

    def _depth(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float, depth: int) -> JobOutput:
        params = config.params_at(h_e, lam)
        circuit = prep_circuit(lattice, params, config.prep)
        step = build_trotter_step(lattice, config.trotter_spec(h_e, lam, mode="gate_level"))
        for _ in range(depth):
            circuit = circuit.compose(step)
        model = config.noise_for(lam, h_e, depth)
        if model is None:
            model = NoiseModel.noiseless(config.seed_for("noise", lam, h_e, depth))
        result = loschmidt_echo(lattice, params, circuit, model, config.n_traj, config.shots_per_traj)

        rows = Rows(self.name, h_e, lam, config.dt)
        t = depth * config.dt
        out = JobOutput(rows=[
            rows.make("p_eff", result.p_eff, t=t),
            rows.make("p_loschmidt", result.p_loschmidt, t=t),
            rows.make("echo_energy", result.e_measured, variant="measured", t=t, stderr=result.e_measured_err),
            rows.make("echo_energy", result.e_exact, variant="exact", t=t),
            rows.make("entangling_gates", 2 * circuit.entangling_count, t=t),
        ])
        out.meta["retention"] = [{"label": f"echo depth={depth}", "t": t, "value": result.retention}]
        out.meta["p_eff"] = [{"label": "loschmidt", "t": t, "p_eff": result.p_eff, "flagged": result.flagged, "source": "loschmidt"}]
        return out
