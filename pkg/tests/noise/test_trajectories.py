# tests/noise/test_trajectories.py
# --- agent_meta ---
# role: noise-trajectories-test
# owner: @backend
# contract: Тестирует шум считывания, воспроизводимость траекторий, флаги анцилл и серии по шагам Троттера
# last_reviewed: 2026-10-16
# interfaces:
#   - test_readout_noise()
#   - test_trajectories_are_reproducible()
#   - test_gate_noise_is_injected()
#   - test_trajectory_series_flags()
#   - test_readout_noise_spares_ancilla_flag()
# --- /agent_meta ---

import numpy as np
import pytest
from pydantic import ValidationError

from src.circuits import CircuitBuilder, HamiltonianParams, TrotterSpec, build_trotter_step
from src.lattice import LatticeSpec, build_lattice
from src.noise import NoiseModel, apply_readout_noise, run_trajectories, run_trajectory_series
from src.noise.errors import InvalidTrajectoryCountError, ReadoutShapeError
from src.state_engine import init_zero


@pytest.fixture
def bell_circuit():
    return CircuitBuilder().add("h", [0]).add("cnot", [0, 1]).build(2, name="bell")


def test_readout_noise():
    rng = np.random.default_rng(0)
    ones = np.ones((20000, 2), dtype=np.uint8)
    noisy = apply_readout_noise(ones, (0.0, 0.2), rng)
    assert np.mean(noisy == 0) == pytest.approx(0.2, abs=0.01)
    zeros = np.zeros((20000, 2), dtype=np.uint8)
    np.testing.assert_array_equal(apply_readout_noise(zeros, (0.0, 0.2), rng), zeros)

    model = NoiseModel(eps0=0.0, eps1=0.0, per_qubit={1: (0.3, 0.0)})
    flipped = apply_readout_noise(zeros, model, rng)
    assert flipped[:, 0].sum() == 0
    assert np.mean(flipped[:, 1]) == pytest.approx(0.3, abs=0.01)

    with pytest.raises(ReadoutShapeError):
        apply_readout_noise(zeros, (np.zeros(3), 0.0), rng)
    with pytest.raises(ValidationError):
        NoiseModel(per_qubit={0: (0.6, 0.0)})


def test_trajectories_are_reproducible(bell_circuit):
    """Траектория определяется (master_seed, index) и не зависит от числа потоков"""
    model = NoiseModel(master_seed=3)
    a = run_trajectories(bell_circuit, init_zero(2), model, n_traj=4, shots_per_traj=50)
    b = run_trajectories(bell_circuit, init_zero(2), model, n_traj=4, shots_per_traj=50, max_workers=3)
    np.testing.assert_array_equal(a.bits, b.bits)
    assert a.n_shots == 200
    assert list(np.unique(a.trajectory)) == [0, 1, 2, 3]
    assert a.seeds[0] == (3, 0)

    other = run_trajectories(bell_circuit, init_zero(2), model.model_copy(update={"master_seed": 4}), n_traj=4, shots_per_traj=50)
    assert not np.array_equal(a.bits, other.bits)

    clean = run_trajectories(bell_circuit, init_zero(2), NoiseModel.noiseless(), n_traj=2, shots_per_traj=100)
    assert np.all(clean.bits[:, 0] == clean.bits[:, 1])
    assert clean.meta["gate_errors"] == [0, 0]

    with pytest.raises(InvalidTrajectoryCountError):
        run_trajectories(bell_circuit, init_zero(2), model, n_traj=0, shots_per_traj=10)


def test_gate_noise_is_injected():
    builder = CircuitBuilder()
    for _ in range(20):
        builder.add("cnot", [0, 1])
    circuit = builder.build(2, name="cnot_chain")
    model = NoiseModel(p2=0.5, eps0=0.0, eps1=0.0, master_seed=1)
    table = run_trajectories(
        circuit, init_zero(2), model, n_traj=20, shots_per_traj=1,
        observables=lambda s: [float(np.abs(s.amplitudes[0]) ** 2)],
    )
    assert 5 < np.mean(table.meta["gate_errors"]) < 15
    assert table.meta["observables"].shape == (20, 1)
    # без ошибок цепочка CNOT оставляет |00>, с ошибками хотя бы одна траектория уходит
    assert np.any(table.meta["observables"][:, 0] < 1.0 - 1e-9)


def test_trajectory_series_flags():
    lattice = build_lattice(LatticeSpec(lx=2, ly=2))
    spec = TrotterSpec(params=HamiltonianParams(h_e=0.4, lam=0.2), dt=0.2, mode="gate_level")
    step = build_trotter_step(lattice, spec)

    clean = run_trajectory_series(step, init_zero(lattice.n_links), NoiseModel.noiseless(), 3, n_traj=2, shots_per_traj=20)
    assert len(clean) == 4
    assert [t.meta["step"] for t in clean] == [0, 1, 2, 3]
    assert clean[0].ancilla_columns == (lattice.n_links,)
    assert all(t.ancilla_bits.sum() == 0 for t in clean)

    noisy = run_trajectory_series(
        step, init_zero(lattice.n_links), NoiseModel(p2=0.3, eps0=0.0, eps1=0.0, master_seed=2), 3,
        n_traj=10, shots_per_traj=5,
    )
    assert noisy[0].ancilla_bits.sum() == 0
    assert noisy[-1].ancilla_bits.sum() > 0
    # флаг монотонен по шагам внутри траектории
    flags = [t.ancilla_bits[:, 0] for t in noisy]
    for before, after in zip(flags, flags[1:]):
        assert np.all(after >= before)

    with pytest.raises(ValueError):
        run_trajectory_series(step, init_zero(lattice.n_links), NoiseModel.noiseless(), -1, n_traj=1, shots_per_traj=1)


def test_readout_noise_spares_ancilla_flag():
    """Флаг анцилл не переворачивается ошибками считывания, столбцы рёбер - переворачиваются."""
    lattice = build_lattice(LatticeSpec(lx=2, ly=2))
    spec = TrotterSpec(params=HamiltonianParams(h_e=0.4, lam=0.2), dt=0.2, mode="gate_level")
    step = build_trotter_step(lattice, spec)
    model = NoiseModel(p2=0.0, eps0=0.4, eps1=0.4, master_seed=5)

    series = run_trajectory_series(step, init_zero(lattice.n_links), model, 2, n_traj=4, shots_per_traj=100)
    for table in series:
        assert table.ancilla_columns == (lattice.n_links,)
        assert table.ancilla_bits.sum() == 0
    # при t = 0 все рёбра в 0, единицы дают только ошибки считывания
    assert 0.3 < series[0].link_bits.mean() < 0.5
