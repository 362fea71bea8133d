# tests/reference/test_reference.py
# --- agent_meta ---
# role: reference-solver-test
# owner: @backend
# contract: Тестирует точный решатель: сборку гамильтониана, основное состояние, точную эволюцию, качество WALA, сходимость Троттера
# last_reviewed: 2026-10-16
# interfaces:
#   - test_hamiltonian_terms_and_hermiticity()
#   - test_ground_state_of_toric_code()
#   - test_dense_and_sparse_paths_agree()
#   - test_exact_evolution()
#   - test_trotter_error_orders()
#   - test_charges_conserved_without_hopping()
# --- /agent_meta ---

import numpy as np
import pytest

from src.circuits import HamiltonianParams, TrotterSpec, evolve, trotter_series
from src.lattice import LatticeSpec, build_lattice, central_horizontal_link
from src.observables import exact_heatmap, exact_mean_separation
from src.reference import (
    InvalidTimeError,
    SolverSettings,
    build_hamiltonian,
    energy,
    evolve_series,
    exact_evolve,
    ground_state,
    trotter_error_scan,
    wala_quality,
    wala_state,
)
from src.state_engine import PauliString, fidelity, init_zero, pauli_apply


@pytest.fixture
def lattice_2x3():
    return build_lattice(LatticeSpec(lx=2, ly=3))


def test_hamiltonian_terms_and_hermiticity(lattice_2x3):
    h = build_hamiltonian(lattice_2x3, HamiltonianParams(h_e=0.5, lam=0.25))
    # 6 вершин, 2 плакетки, по два полевых члена на каждое из 7 рёбер
    assert h.term_count == 22
    dense = h.to_dense()
    np.testing.assert_allclose(dense, dense.conj().T)
    zero = init_zero(lattice_2x3.n_links)
    assert energy(zero, h) == pytest.approx(h.term_energy(zero))
    # |0…0>: все A_v = 1, <B_p> = 0, <Z> = 1
    assert energy(zero, h) == pytest.approx(-6 - 0.5 * 7)

    bare = build_hamiltonian(lattice_2x3, HamiltonianParams())
    assert bare.term_count == 8


def test_ground_state_of_toric_code(lattice_2x3):
    """При h_E = λ = 0 основное состояние - торический код, совпадающий с WALA(π/2)"""
    h = build_hamiltonian(lattice_2x3, HamiltonianParams())
    e0, psi = ground_state(h)
    assert e0 == pytest.approx(-8.0)
    assert fidelity(psi, wala_state(lattice_2x3, np.pi / 2)) == pytest.approx(1.0, abs=1e-9)

    quality = wala_quality(lattice_2x3, HamiltonianParams())
    assert quality.theta == pytest.approx(np.pi / 2)
    assert quality.infidelity < 1e-9
    assert quality.relative_energy_error < 1e-9


def test_dense_and_sparse_paths_agree(lattice_2x3):
    h = build_hamiltonian(lattice_2x3, HamiltonianParams(h_e=0.7, lam=0.2))
    e_dense, psi_dense = ground_state(h)
    e_sparse, psi_sparse = ground_state(h, settings=SolverSettings(dense_max_qubits=1))
    assert e_sparse == pytest.approx(e_dense, abs=1e-9)
    assert fidelity(psi_dense, psi_sparse) == pytest.approx(1.0, abs=1e-8)

    psi0 = wala_state(lattice_2x3, 0.8)
    dense_t = exact_evolve(psi0, h, 0.9)
    sparse_t = exact_evolve(psi0, h, 0.9, settings=SolverSettings(dense_max_qubits=1))
    np.testing.assert_allclose(sparse_t.amplitudes, dense_t.amplitudes, atol=1e-8)


def test_exact_evolution(lattice_2x3):
    params = HamiltonianParams(h_e=0.6, lam=0.25)
    h = build_hamiltonian(lattice_2x3, params)
    psi0 = wala_state(lattice_2x3, 1.0)

    series = evolve_series(psi0, h, 0.3, 4)
    assert len(series) == 5
    np.testing.assert_allclose(series[-1].amplitudes, exact_evolve(psi0, h, 1.2).amplitudes, atol=1e-10)
    # энергия сохраняется
    assert energy(series[-1], h) == pytest.approx(energy(psi0, h), abs=1e-9)
    np.testing.assert_allclose(exact_evolve(psi0, h, 0.0).amplitudes, psi0.amplitudes)
    with pytest.raises(InvalidTimeError):
        exact_evolve(psi0, h, -1.0)
    with pytest.raises(InvalidTimeError):
        evolve_series(psi0, h, 0.0, 3)

    # неверность Троттера убывает квадратично по шагу
    exact = exact_evolve(psi0, h, 1.2)
    coarse = 1 - fidelity(evolve(psi0, lattice_2x3, TrotterSpec(params=params, dt=0.1, n_steps=12)), exact)
    fine = 1 - fidelity(evolve(psi0, lattice_2x3, TrotterSpec(params=params, dt=0.01, n_steps=120)), exact)
    assert fine < 1e-2
    assert coarse > 20 * fine


def test_trotter_error_orders(lattice_2x3):
    scan = trotter_error_scan(lattice_2x3, HamiltonianParams(h_e=0.5, lam=0.3), [0.05, 0.1, 0.2], 1.0)
    assert [p.dt for p in scan.points] == [0.05, 0.1, 0.2]
    assert [p.n_steps for p in scan.points] == [20, 10, 5]
    assert scan.step_slope == pytest.approx(2.0, abs=0.3)
    assert 0.5 < scan.global_slope < 1.5
    with pytest.raises(ValueError):
        trotter_error_scan(lattice_2x3, HamiltonianParams(), [0.1], 1.0)


def _max_drift(states, lattice):
    charge0, sep0 = exact_heatmap(states[0], lattice), exact_mean_separation(states[0], lattice)
    charge = max(abs(v - charge0[k]) for s in states for k, v in exact_heatmap(s, lattice).items())
    sep = max(abs(exact_mean_separation(s, lattice) - sep0) for s in states)
    return charge, sep


@pytest.mark.parametrize("h_e", [0.0, 0.6, 2.25])
def test_charges_conserved_without_hopping(lattice_2x3, h_e):
    """λ = 0: все члены коммутируют с A_v, карта зарядов и расстояние пары не меняются."""
    link = central_horizontal_link(lattice_2x3)
    psi0 = pauli_apply(wala_state(lattice_2x3, 1.0), PauliString.x_on([link]))
    params = HamiltonianParams(h_e=h_e, lam=0.0)
    trotter = trotter_series(psi0, lattice_2x3, TrotterSpec(params=params, dt=0.3, n_steps=10))
    exact = evolve_series(psi0, build_hamiltonian(lattice_2x3, params), 0.3, 10)
    for states in (trotter, exact):
        charge, sep = _max_drift(states, lattice_2x3)
        assert charge < 1e-9
        assert sep < 1e-9

    moving = evolve_series(psi0, build_hamiltonian(lattice_2x3, params.with_fields(lam=0.3)), 0.3, 10)
    assert _max_drift(moving, lattice_2x3)[0] > 1e-3
