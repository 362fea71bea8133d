# src/harness/scenarios/strings.py
# --- agent_meta ---
# role: harness-scenarios-strings
# owner: @backend
# contract: Сценарии двухвременных корреляторов: S_ZZ на струне с горбом, фазы на торическом коде, X-струнный коррелятор, сравнение λ = 0
# last_reviewed: 2026-10-16
# interfaces:
#   - Fig4StringSzzScenario (fig4_string_szz)
#   - AuxCorrelatorsScenario (edfig9_aux_correlators)
#   - StringCorrelatorScenario (s5_string_correlator)
#   - LambdaZeroStringsScenario (s6_lambda_zero_strings)
# --- /agent_meta ---

from __future__ import annotations

from typing import Any, Dict, List, Tuple

import numpy as np

from src.circuits import TrotterSpec
from src.lattice import Lattice, bump_sites, pinned_row_string
from src.noise import run_trajectories
from src.observables import CorrelatorSeries, s_zz, string_correlator, two_time_zz, z_field_map
from src.state_engine import PauliString, StateVector, expectation, init_zero

from ..interfaces import AbstractScenario
from ..models import Job, JobOutput
from ..options import ExperimentConfig
from ..preparation import noisy_prep_circuit, prepare_state
from .common import Rows, link_label, magnitude_rescale, noisy_correlator

_PINNED_BOTH = [{"side": "left", "row": 1, "col": 0}, {"side": "right", "row": 1, "col": 3}]


def _series_rows(series: CorrelatorSeries, rows: Rows, prefix: str, variant: str, site: str, stage: str = "ideal") -> JobOutput:
    out = JobOutput()
    for k, t in enumerate(series.times):
        out.rows.append(rows.make(f"{prefix}_re", series.re[k], variant=variant, site=site, t=t, stderr=series.re_err[k], stage=stage))
        out.rows.append(rows.make(f"{prefix}_im", series.im[k], variant=variant, site=site, t=t, stderr=series.im_err[k], stage=stage))
    return out


def _szz_rows(series: CorrelatorSeries, rows: Rows, variant: str, site: str, stage: str = "ideal") -> JobOutput:
    out = JobOutput()
    for t, value, err in zip(series.times, series.re, series.re_err):
        out.rows.append(rows.make("s_zz", value, variant=variant, site=site, t=t, stderr=err, stage=stage))
    return out


def _noisy_z0(config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float, link: int, key: Tuple[Any, ...]) -> float:
    """<Z_l> на зашумлённой подготовке; для суперпозиции берётся идеальное значение."""
    params = config.params_at(h_e, lam)
    prep = noisy_prep_circuit(lattice, params, config.prep)
    if prep is None:
        return expectation(prepare_state(lattice, params, config.prep), PauliString.z_on([link]))
    shots = run_trajectories(prep, init_zero(lattice.n_links), config.noise_for(*key, "z0"), config.n_traj, config.shots_per_traj)
    return z_field_map(shots, lattice.n_links)[link].value


def _noisy_zz(
    config: ExperimentConfig,
    lattice: Lattice,
    h_e: float,
    lam: float,
    psi0: StateVector,
    link: int,
    key: Tuple[Any, ...],
) -> Tuple[CorrelatorSeries, CorrelatorSeries, List[float], List[Dict[str, Any]]]:
    """(измеренный ряд, перемасштабированный ряд, retention, след p_eff).

    Масштаб берётся из двойника с λ = h_E = 0, где идеальный модуль известен точно.
    """
    z = PauliString.z_on([link])
    spec = config.trotter_spec(h_e, lam)
    measured, retention = noisy_correlator(config, lattice, spec, psi0, z, z, key, label=f"ZZ[{link}]")
    if not config.mitigation.rescale:
        return measured, measured, retention, []
    twin_spec = config.trotter_spec(0.0, 0.0)
    twin_measured, _ = noisy_correlator(config, lattice, twin_spec, psi0, z, z, key + ("twin",))
    twin_ideal = two_time_zz(psi0, lattice, twin_spec.model_copy(update={"mode": "direct"}), link)
    rescaled, trace = magnitude_rescale(measured, twin_measured, twin_ideal)
    return measured, rescaled, retention, trace


class Fig4StringSzzScenario(AbstractScenario):
    """S_ZZ(t) на верхнем ребре горба струны (q1) и на зеркальном ребре под ним (q2)."""

    name = "fig4_string_szz"
    description = "Two-time ZZ correlators on a pinned string with a bump"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3, "pinned_links": _PINNED_BOTH},
            "h_e_grid": [0.1, 0.6, 1.4],
            "lam_grid": [0.25],
            "dt": 0.3,
            "n_steps": 9,
            "prep": {"kind": "wala_string"},
            "seed": 23,
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "zz_is_one_at_start",
                "kind": "abs_le",
                "observable": "zz_re",
                "where": {"stage": "ideal", "t": 0.0},
                "target": 1.0,
                "tol": 1e-10,
            },
            {"name": "bundle_integrity", "kind": "integrity"},
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [Job((lam, h), lambda h=h, lam=lam: self._point(config, lattice, h, lam)) for h, lam in config.grid]

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float) -> JobOutput:
        rows = Rows(self.name, h_e, lam, config.dt)
        psi0 = prepare_state(lattice, config.params_at(h_e, lam), config.prep)
        spec = config.trotter_spec(h_e, lam, mode=config.mode)
        sites = bump_sites(lattice)

        out = JobOutput()
        for variant, link in (("q1", sites.q1), ("q2", sites.q2)):
            site = link_label(lattice, link)
            z0 = expectation(psi0, PauliString.z_on([link]))
            series = two_time_zz(psi0, lattice, spec, link)
            out.extend(_series_rows(series, rows, "zz", variant, site))
            out.extend(_szz_rows(s_zz(series, z0), rows, variant, site))
            out.rows.append(rows.make("z0", z0, variant=variant, site=site))

            if config.noise is None:
                continue
            key = (lam, h_e, variant)
            measured, rescaled, retention, trace = _noisy_zz(config, lattice, h_e, lam, psi0, link, key)
            stage = "postselected" if config.mitigation.postselect else "raw"
            z0_noisy = _noisy_z0(config, lattice, h_e, lam, link, key)
            out.extend(_series_rows(measured, rows, "zz", variant, site, stage))
            out.extend(_szz_rows(s_zz(measured, z0_noisy), rows, variant, site, stage))
            if trace:
                out.extend(_series_rows(rescaled, rows, "zz", variant, site, "mitigated"))
                out.extend(_szz_rows(s_zz(rescaled, z0_noisy), rows, variant, site, "mitigated"))
                out.meta.setdefault("p_eff", []).extend({"label": f"{variant} h_e={h_e:g}", **r} for r in trace)
            out.meta.setdefault("retention", []).extend(
                {"label": f"{variant} h_e={h_e:g}", "t": t, "value": r} for t, r in zip(series.times, retention)
            )
        return out


class AuxCorrelatorsScenario(AbstractScenario):
    """Торический код при λ = h_E = 0: |<Z(t)Z(0)>| = 1, фаза вращается с частотой 2·(число плакеток ребра)."""

    name = "edfig9_aux_correlators"
    description = "Phase rotation of ZZ correlators on the toric code for bulk and edge links"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3},
            "h_e_grid": [0.0],
            "lam_grid": [0.0],
            "dt": 0.3,
            "n_steps": 9,
            "prep": {"kind": "toric"},
            "seed": 29,
            "extra": {"links": {}},
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {"name": "unit_magnitude", "kind": "abs_le", "observable": "zz_abs", "where": {"stage": "ideal"}, "target": 1.0, "tol": 1e-10},
            {"name": "bulk_phase_rate", "kind": "abs_le", "observable": "phase_rate", "where": {"variant": "bulk", "stage": "ideal"}, "target": 4.0, "tol": 1e-6},
            {"name": "edge_phase_rate", "kind": "abs_le", "observable": "phase_rate", "where": {"variant": "edge", "stage": "ideal"}, "target": 2.0, "tol": 1e-6},
        ]

    def _links(self, config: ExperimentConfig, lattice: Lattice) -> Dict[str, int]:
        chosen = config.option("links", {}) or {}
        free = [l for l in range(lattice.n_links) if l not in lattice.pinned_link_ids]
        defaults = {
            "bulk": next(l for l in free if lattice.plaquette_multiplicity(l) == 2),
            "edge": next(l for l in free if lattice.plaquette_multiplicity(l) == 1),
        }
        return {name: lattice.resolve(chosen[name]) if name in chosen else link for name, link in defaults.items()}

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [
            Job((lam, h, name), lambda h=h, lam=lam, name=name, link=link: self._point(config, lattice, h, lam, name, link))
            for h, lam in config.grid
            for name, link in self._links(config, lattice).items()
        ]

    def _emit(self, series: CorrelatorSeries, rows: Rows, variant: str, site: str, stage: str) -> JobOutput:
        out = _series_rows(series, rows, "zz", variant, site, stage)
        values = np.array(series.re) + 1j * np.array(series.im)
        for t, v in zip(series.times, values):
            out.rows.append(rows.make("zz_abs", abs(v), variant=variant, site=site, t=t, stage=stage))
        phase = np.unwrap(np.angle(values))
        rate = abs(float(np.polyfit(series.times, phase, 1)[0])) if len(series.times) > 1 else 0.0
        out.rows.append(rows.make("phase_rate", rate, variant=variant, site=site, stage=stage))
        return out

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float, variant: str, link: int) -> JobOutput:
        rows = Rows(self.name, h_e, lam, config.dt)
        site = link_label(lattice, link)
        psi0 = prepare_state(lattice, config.params_at(h_e, lam), config.prep)
        series = two_time_zz(psi0, lattice, config.trotter_spec(h_e, lam, mode=config.mode), link)
        out = self._emit(series, rows, variant, site, "ideal")
        out.rows.append(rows.make("plaquette_multiplicity", lattice.plaquette_multiplicity(link), variant=variant, site=site))
        if config.noise is not None:
            z = PauliString.z_on([link])
            measured, retention = noisy_correlator(config, lattice, config.trotter_spec(h_e, lam), psi0, z, z, (lam, h_e, variant))
            out.extend(self._emit(measured, rows, variant, site, "postselected" if config.mitigation.postselect else "raw"))
            out.meta["retention"] = [{"label": variant, "t": t, "value": r} for t, r in zip(measured.times, retention)]
        return out


class StringCorrelatorScenario(AbstractScenario):
    """C(j, t) = <(X_Q1…X_Qj)(t) X_Q1(0)> от левого закреплённого ребра; точный оракул против теста Адамара."""

    name = "s5_string_correlator"
    description = "X-string correlators from a pinned link, exact oracle versus emulated Hadamard test"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3, "pinned_links": [{"side": "left", "row": 1, "col": 0}]},
            "h_e_grid": [0.6],
            "lam_grid": [0.25],
            "dt": 0.3,
            "n_steps": 9,
            "prep": {"kind": "wala"},
            "seed": 31,
            "extra": {"lengths": None, "methods": ["exact_oracle", "hadamard_emulated"]},
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {"name": "methods_agree", "kind": "abs_le", "observable": "method_diff", "tol": 1e-10},
            {
                "name": "single_link_starts_at_one",
                "kind": "abs_le",
                "observable": "c_re",
                "where": {"variant": "j=1", "t": 0.0, "stage": "ideal"},
                "target": 1.0,
                "tol": 1e-10,
            },
            {
                "name": "open_strings_start_at_zero",
                "kind": "abs_le",
                "observable": "c_re",
                "where": {"variant": ["j=2", "j=3", "j=4"], "t": 0.0, "stage": "ideal"},
                "tol": 1e-10,
            },
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        lengths = config.option("lengths") or list(range(1, lattice.lx + 1))
        return [
            Job((lam, h, int(j)), lambda h=h, lam=lam, j=int(j): self._point(config, lattice, h, lam, j))
            for h, lam in config.grid
            for j in lengths
        ]

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float, lam: float, j: int) -> JobOutput:
        rows = Rows(self.name, h_e, lam, config.dt)
        psi0 = prepare_state(lattice, config.params_at(h_e, lam), config.prep)
        spec = config.trotter_spec(h_e, lam, mode=config.mode)
        variant = f"j={j}"

        out = JobOutput()
        results = {}
        for method in config.option("methods", ["exact_oracle"]):
            series = string_correlator(psi0, lattice, spec, j, method)
            results[method] = series
            out.extend(_series_rows(series, rows, "c", variant, method))
        if len(results) > 1:
            reference = next(iter(results.values()))
            for series in list(results.values())[1:]:
                diff = max(
                    abs(complex(a_re, a_im) - complex(b_re, b_im))
                    for a_re, a_im, b_re, b_im in zip(reference.re, reference.im, series.re, series.im)
                )
                out.rows.append(rows.make("method_diff", diff, variant=variant, site="/".join(results)))

        if config.noise is not None:
            path = pinned_row_string(lattice, j)
            measured, retention = noisy_correlator(
                config,
                lattice,
                self._masked(config.trotter_spec(h_e, lam), path[0]),
                psi0,
                PauliString.x_on([path[0]]),
                PauliString.x_on(path),
                (lam, h_e, j),
                label=f"C[{j}]",
            )
            stage = "postselected" if config.mitigation.postselect else "raw"
            out.extend(_series_rows(measured, rows, "c", variant, "noisy", stage))
            out.meta["retention"] = [{"label": variant, "t": t, "value": r} for t, r in zip(measured.times, retention)]
        return out

    @staticmethod
    def _masked(spec: TrotterSpec, link: int) -> TrotterSpec:
        if spec.field_mask is None or link in spec.field_mask:
            return spec
        return spec.model_copy(update={"field_mask": tuple(sorted(set(spec.field_mask) | {link}))})


class LambdaZeroStringsScenario(AbstractScenario):
    """S_ZZ на струне с горбом при λ = 0 против λ = 0.25: малое λ почти не меняет ранние времена."""

    name = "s6_lambda_zero_strings"
    description = "String S_ZZ correlators with and without the transverse field"

    def base_config(self) -> Dict[str, Any]:
        return {
            "lattice": {"lx": 4, "ly": 3, "pinned_links": _PINNED_BOTH},
            "h_e_grid": [0.1, 0.6, 1.4],
            "lam_grid": [0.25],
            "dt": 0.3,
            "n_steps": 9,
            "prep": {"kind": "wala_string"},
            "seed": 37,
            "extra": {"compare_lam": [0.0, 0.25]},
        }

    def criteria(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": "lambda_barely_matters_early",
                "kind": "abs_le",
                "observable": "s_zz_lambda_diff",
                "key_max": 2.7,
                "tol": 0.1,
            },
        ]

    def build_jobs(self, config: ExperimentConfig, lattice: Lattice) -> List[Job]:
        return [Job((h,), lambda h=h: self._point(config, lattice, h)) for h in config.h_e_grid]

    def _point(self, config: ExperimentConfig, lattice: Lattice, h_e: float) -> JobOutput:
        lam_a, lam_b = config.option("compare_lam", [0.0, 0.25])
        sites = bump_sites(lattice)
        out = JobOutput()
        for variant, link in (("q1", sites.q1), ("q2", sites.q2)):
            site = link_label(lattice, link)
            curves = {}
            for lam in (lam_a, lam_b):
                rows = Rows(self.name, h_e, lam, config.dt)
                psi0 = prepare_state(lattice, config.params_at(h_e, lam), config.prep)
                z0 = expectation(psi0, PauliString.z_on([link]))
                curves[lam] = s_zz(two_time_zz(psi0, lattice, config.trotter_spec(h_e, lam, mode=config.mode), link), z0)
                out.extend(_szz_rows(curves[lam], rows, variant, site))
            rows = Rows(self.name, h_e, lam_b, config.dt)
            for t, a, b in zip(curves[lam_a].times, curves[lam_a].re, curves[lam_b].re):
                out.rows.append(rows.make("s_zz_lambda_diff", abs(b - a), variant=variant, site=site, t=t))
        return out
