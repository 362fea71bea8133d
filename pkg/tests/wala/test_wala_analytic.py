# tests/wala/test_wala_analytic.py
# --- agent_meta ---
# role: wala-analytic-test
# owner: @backend
# contract: Тестирует аналитическую энергию WALA, выбор θ* и термодинамический предел
# last_reviewed: 2026-10-16
# interfaces:
#   - test_energy_matches_state()
#   - test_optimize_theta()
#   - test_theta_thermo()
#   - test_theta_thermo_matches_grid_minimum()
#   - test_finite_optimum_sits_below_thermodynamic_curve()
# --- /agent_meta ---

import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from src.circuits import HamiltonianParams
from src.lattice import LatticeSpec, build_lattice
from src.reference import build_hamiltonian, energy, wala_state
from src.wala import InvalidCouplingError, analytic_expectations, energy_theta, optimize_theta, theta_thermo
from src.wala.analytic import energy_per_cell, polarized_energy, scan_theta, toric_energy


@pytest.mark.parametrize("theta", [0.0, 0.4, 1.1, math.pi / 2])
def test_energy_matches_state(theta):
    """Формула E(θ) совпадает с <H> на схеме WALA; λ в среднее не входит"""
    lattice = build_lattice(LatticeSpec(lx=2, ly=3))
    params = HamiltonianParams(h_e=0.7, lam=0.3)
    h = build_hamiltonian(lattice, params)
    assert energy(wala_state(lattice, theta), h) == pytest.approx(energy_theta(theta, 2, 3, params), abs=1e-10)


def test_optimize_theta():
    params = HamiltonianParams()
    toric = optimize_theta(4, 3, params)
    assert toric.theta == pytest.approx(math.pi / 2)
    assert toric.energy == pytest.approx(-18.0)
    assert toric_energy(4, 3, params) == pytest.approx(-18.0)
    assert polarized_energy(4, 3, params.with_fields(h_e=1.0)) == pytest.approx(-12 - 17)

    solutions = scan_theta(4, 3, params, [0.0, 0.25, 0.5, 1.0, 2.0])
    thetas = [s.theta for s in solutions]
    assert thetas == sorted(thetas, reverse=True)
    for s in solutions:
        p = params.with_fields(h_e=s.h_e)
        assert s.energy <= min(toric_energy(4, 3, p), polarized_energy(4, 3, p)) + 1e-12
    assert solutions[-1].expectations.b_p == pytest.approx(math.sin(solutions[-1].theta))

    with pytest.raises(InvalidCouplingError):
        optimize_theta(4, 3, params.with_fields(j_m=0.0))


def test_theta_thermo():
    assert theta_thermo(0.1) == pytest.approx(math.pi / 2)
    assert theta_thermo(0.25) == pytest.approx(math.pi / 2)
    assert theta_thermo(0.5) == pytest.approx(math.pi / 6)
    # θ_thermo минимизирует энергию на ячейку
    for h_e in (0.3, 0.8, 2.0):
        best = theta_thermo(h_e)
        for nearby in (best - 0.05, best + 0.05):
            assert energy_per_cell(best, h_e) <= energy_per_cell(nearby, h_e) + 1e-12
    with pytest.raises(InvalidCouplingError):
        theta_thermo(-0.1)
    with pytest.raises(InvalidCouplingError):
        theta_thermo(0.5, j_m=0.0)

    expectations = analytic_expectations(0.3)
    assert expectations.z_bulk == pytest.approx(math.cos(0.3) ** 2)
    assert expectations.a_v == 1.0 and expectations.x_link == 0.0


def _grid_argmin(h_e):
    """Минимум энергии на ячейку: сетка по [0, π/2], затем уточнение в соседних узлах."""
    grid = np.linspace(0.0, math.pi / 2, 4001)
    values = np.array([energy_per_cell(t, h_e) for t in grid])
    k = int(np.argmin(values))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    refined = minimize_scalar(lambda t: energy_per_cell(t, h_e), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    best = min([float(refined.x), float(grid[k])], key=lambda t: energy_per_cell(t, h_e))
    return best


@pytest.mark.parametrize("h_e", [0.0, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.5, 2.0])
def test_theta_thermo_matches_grid_minimum(h_e):
    assert theta_thermo(h_e) == pytest.approx(_grid_argmin(h_e), abs=1e-6)


def test_theta_thermo_branch_is_continuous():
    assert theta_thermo(0.25) == pytest.approx(math.pi / 2)
    assert theta_thermo(0.25 + 1e-9) == pytest.approx(math.pi / 2, abs=1e-3)


@pytest.mark.parametrize("h_e", [0.25, 0.3, 0.4, 0.5, 0.75, 1.0])
def test_finite_optimum_sits_below_thermodynamic_curve(h_e):
    """На 4×3 граничные рёбра (-h_E·cos θ) сдвигают θ* ниже термодинамического значения."""
    params = HamiltonianParams(h_e=h_e)
    finite = optimize_theta(4, 3, params).theta
    thermo = theta_thermo(h_e)
    assert finite < thermo
    # производная E(θ) в точке θ_thermo положительна, поэтому минимум левее
    slope = (energy_theta(thermo, 4, 3, params) - energy_theta(thermo - 1e-6, 4, 3, params)) / 1e-6
    assert slope > 0
