# src/reference/quality.py
# --- agent_meta ---
# role: reference-quality
# owner: @backend
# contract: Метрики качества против точного решателя: WALA(θ*) и порядок ошибки Троттера
# last_reviewed: 2026-10-13
# interfaces:
#   - wala_quality(lattice, params) -> WalaQuality
#   - trotter_error_scan(lattice, params, dts, t, state=None) -> TrotterErrorScan
# --- /agent_meta ---

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from src.circuits import (
    HamiltonianParams,
    TrotterSpec,
    build_pair,
    build_trotter_step,
    build_wala,
    execute,
)
from src.lattice import Lattice, central_horizontal_link
from src.state_engine import StateVector, fidelity, init_zero
from src.utils import get_logger
from src.wala import optimize_theta

from .hamiltonian import build_hamiltonian
from .models import TrotterErrorPoint, TrotterErrorScan, WalaQuality
from .solver import energy, evolve_series, exact_evolve, ground_state

_log = get_logger(__name__)


def wala_state(lattice: Lattice, theta: float) -> StateVector:
    """WALA(θ) без анцилл на |0...0>."""
    return execute(build_wala(lattice, theta, mode="ancilla_free"), init_zero(lattice.n_links))


def wala_quality(lattice: Lattice, params: HamiltonianParams) -> WalaQuality:
    h = build_hamiltonian(lattice, params)
    e_exact, psi_exact = ground_state(h)
    theta = optimize_theta(lattice.lx, lattice.ly, params).theta
    psi_wala = wala_state(lattice, theta)
    e_wala = energy(psi_wala, h)
    quality = WalaQuality(
        theta=theta,
        e_exact=e_exact,
        e_wala=e_wala,
        relative_energy_error=abs(e_exact - e_wala) / abs(e_exact),
        infidelity=max(0.0, 1.0 - fidelity(psi_exact, psi_wala)),
    )
    _log.info(
        "WALA %dx%d h_E=%.3f λ=%.3f: ΔE/E=%.2e, 1-F=%.2e",
        lattice.ly, lattice.lx, params.h_e, params.lam, quality.relative_energy_error, quality.infidelity,
    )
    return quality


def _default_initial_state(lattice: Lattice) -> StateVector:
    """Пара зарядов на центральном горизонтальном ребре поверх торического кода."""
    psi = wala_state(lattice, np.pi / 2)
    return execute(build_pair(lattice, central_horizontal_link(lattice)), psi)


def trotter_error_scan(
    lattice: Lattice,
    params: HamiltonianParams,
    dts: Sequence[float],
    t: float,
    state: Optional[StateVector] = None,
) -> TrotterErrorScan:
    """Ошибка одного шага в момент t и глобальная ошибка к моменту round(t/dt)·dt.

    Наклоны подгоняются в логарифмическом масштабе; для первого порядка
    ожидаются ≈ 2 (шаг) и ≈ 1 (глобально).
    """
    if len(dts) < 2:
        raise ValueError("trotter_error_scan needs at least two dt values")
    psi0 = state if state is not None else _default_initial_state(lattice)
    h = build_hamiltonian(lattice, params)
    psi_t = exact_evolve(psi0, h, t)

    points = []
    for dt in sorted(dts):
        n = max(1, int(round(t / dt)))
        spec = TrotterSpec(params=params, dt=dt, n_steps=1)
        step = build_trotter_step(lattice, spec)

        one_trotter = execute(step, psi_t).amplitudes
        one_exact = exact_evolve(psi_t, h, dt).amplitudes
        step_error = float(np.linalg.norm(one_trotter - one_exact))

        trotter = psi0
        for _ in range(n):
            trotter = execute(step, trotter)
        exact = evolve_series(psi0, h, dt, n)[-1]
        global_error = float(np.linalg.norm(trotter.amplitudes - exact.amplitudes))

        points.append(TrotterErrorPoint(dt=dt, n_steps=n, step_error=step_error, global_error=global_error))
        _log.debug("dt=%.3f: шаг %.3e, глобально %.3e", dt, step_error, global_error)

    log_dt = np.log([p.dt for p in points])
    step_slope = float(np.polyfit(log_dt, np.log([p.step_error for p in points]), 1)[0])
    global_slope = float(np.polyfit(log_dt, np.log([p.global_error for p in points]), 1)[0])
    return TrotterErrorScan(t=t, points=points, step_slope=step_slope, global_slope=global_slope)
