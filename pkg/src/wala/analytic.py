# src/wala/analytic.py
# --- agent_meta ---
# role: wala-analytic
# owner: @backend
# contract: Энергия WALA на конечной решётке, оптимизация θ, термодинамический предел и аналитические средние
# last_reviewed: 2026-10-13
# interfaces:
#   - energy_theta(theta, lx, ly, params) -> float
#   - optimize_theta(lx, ly, params) -> WalaSolution
#   - theta_thermo(h_e, j_m) -> float
#   - energy_per_cell(theta, h_e, j_e, j_m) -> float
#   - analytic_expectations(theta) -> WalaExpectations
#   - scan_theta(lx, ly, params, h_grid) -> list[WalaSolution]
#   - toric_energy(lx, ly, params), polarized_energy(lx, ly, params)
# --- /agent_meta ---

from __future__ import annotations

import math
from typing import Iterable, List

from scipy.optimize import minimize_scalar

from src.circuits import HamiltonianParams
from src.utils import get_logger

from .errors import InvalidCouplingError
from .models import WalaExpectations, WalaSolution

_log = get_logger(__name__)

_HALF_PI = math.pi / 2
_TIE_TOL = 1e-12


def _link_counts(lx: int, ly: int) -> tuple[int, int]:
    """(рёбра в двух плакетках, рёбра на границе)."""
    bulk = (lx - 2) * (ly - 1) + (lx - 1) * (ly - 2)
    boundary = 2 * ((lx - 1) + (ly - 1))
    return bulk, boundary


def energy_theta(theta: float, lx: int, ly: int, params: HamiltonianParams) -> float:
    """E(θ) = -J_E·N_v - J_M·N_p·sin θ - h_E·N_bulk·cos² θ - h_E·N_edge·cos θ.

    λ не входит: <X_l> = 0 на любом WALA-состоянии.
    """
    bulk, boundary = _link_counts(lx, ly)
    s, c = math.sin(theta), math.cos(theta)
    return (
        -params.j_e * lx * ly
        - params.j_m * (lx - 1) * (ly - 1) * s
        - params.h_e * bulk * c * c
        - params.h_e * boundary * c
    )


def toric_energy(lx: int, ly: int, params: HamiltonianParams) -> float:
    return energy_theta(_HALF_PI, lx, ly, params)


def polarized_energy(lx: int, ly: int, params: HamiltonianParams) -> float:
    return energy_theta(0.0, lx, ly, params)


def analytic_expectations(theta: float) -> WalaExpectations:
    return WalaExpectations(
        a_v=1.0,
        b_p=math.sin(theta),
        z_bulk=math.cos(theta) ** 2,
        z_boundary=math.cos(theta),
        x_link=0.0,
    )


def optimize_theta(lx: int, ly: int, params: HamiltonianParams) -> WalaSolution:
    """Глобальный минимум E(θ) на [0, π/2].

    Ограниченный метод Брента на [1e-6, π/2], затем сравнение с концами отрезка;
    при равенстве энергий (вырожденный минимум) выбирается θ = π/2.
    """
    if params.j_m <= 0:
        raise InvalidCouplingError("j_m", params.j_m, "j_m > 0")
    if params.lam != 0.0:
        _log.debug("λ=%.3f не влияет на оптимизацию WALA (<X>=0)", params.lam)

    result = minimize_scalar(
        lambda t: energy_theta(t, lx, ly, params),
        bounds=(1e-6, _HALF_PI),
        method="bounded",
        options={"xatol": 1e-10},
    )
    best_theta = float(result.x)
    best_energy = energy_theta(best_theta, lx, ly, params)
    for candidate in (0.0, _HALF_PI):
        e = energy_theta(candidate, lx, ly, params)
        if e < best_energy - _TIE_TOL or (candidate == _HALF_PI and abs(e - best_energy) <= _TIE_TOL):
            best_theta, best_energy = candidate, e

    return WalaSolution(
        theta=best_theta,
        energy=best_energy,
        expectations=analytic_expectations(best_theta),
        lx=lx,
        ly=ly,
        h_e=params.h_e,
    )


def scan_theta(lx: int, ly: int, params: HamiltonianParams, h_grid: Iterable[float]) -> List[WalaSolution]:
    return [optimize_theta(lx, ly, params.with_fields(h_e=float(h))) for h in h_grid]


def theta_thermo(h_e: float, j_m: float = 1.0) -> float:
    """Оптимальный θ в термодинамическом пределе: π/2 до h_E = J_M/4, затем arcsin(J_M/4h_E)."""
    if j_m <= 0:
        raise InvalidCouplingError("j_m", j_m, "j_m > 0")
    if h_e < 0:
        raise InvalidCouplingError("h_e", h_e, "h_e >= 0")
    if h_e <= j_m / 4:
        return _HALF_PI
    return math.asin(j_m / (4 * h_e))


def energy_per_cell(theta: float, h_e: float, j_e: float = 1.0, j_m: float = 1.0) -> float:
    """Энергия на ячейку (вершина, плакетка, два ребра) в термодинамическом пределе."""
    return -j_e - j_m * math.sin(theta) - 2 * h_e * math.cos(theta) ** 2
