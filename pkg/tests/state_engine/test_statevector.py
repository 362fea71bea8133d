# tests/state_engine/test_statevector.py
# --- agent_meta ---
# role: state-engine-test
# owner: @backend
# contract: Тестирует плотный симулятор: порядок кубитов, гейты, экспоненты Паули, выборку, проекцию, предел кубитов
# last_reviewed: 2026-10-16
# interfaces:
#   - test_qubit_order_and_cnot()
#   - test_pauli_apply_and_expectation()
#   - test_sample_is_reproducible()
#   - test_project_and_cap()
#   - test_norm_preserved_over_random_circuit()
#   - test_pauli_exp_inverse_and_commuting_order()
#   - test_pauli_exp_matches_matrix_exponential()
# --- /agent_meta ---

import numpy as np
import pytest
import scipy.linalg as la
from pydantic import ValidationError

from src.state_engine import (
    PAULI_MATRICES,
    NonZeroQubitError,
    PauliString,
    QubitCapExceededError,
    UnknownGateError,
    ZeroProbabilityError,
    apply_gate,
    apply_pauli_exp,
    expectation,
    extend_zero,
    from_amplitudes,
    gate_matrix,
    init_zero,
    overlap,
    pauli_apply,
    project,
    reduce_zero_qubits,
    sample,
)
from src.state_engine.gates import NATIVE_GATES


@pytest.fixture
def bell():
    state = apply_gate(init_zero(2), "h", [0])
    return apply_gate(state, "cnot", [0, 1])


def test_qubit_order_and_cnot(bell):
    """Кубит 0 - младший бит индекса; CNOT управляется первым кубитом целей"""
    flipped = apply_gate(init_zero(3), "x", [0])
    assert flipped.amplitudes[1] == pytest.approx(1.0)
    both = apply_gate(flipped, "cnot", [0, 2])
    assert both.amplitudes[0b101] == pytest.approx(1.0)
    idle = apply_gate(init_zero(2), "cnot", [1, 0])
    assert idle.amplitudes[0] == pytest.approx(1.0)

    expected = np.zeros(4, dtype=complex)
    expected[0] = expected[3] = 1 / np.sqrt(2)
    np.testing.assert_allclose(bell.amplitudes, expected, atol=1e-12)


def test_gate_matrices_are_unitary():
    for name, params in [("rx", (0.3,)), ("rz", (1.1,)), ("rn", (0.0, 0.6, 0.8, 0.7)), ("phased_xz", (0.5, 0.25, 0.1))]:
        m = gate_matrix(name, params)
        np.testing.assert_allclose(m.conj().T @ m, np.eye(2), atol=1e-12)
    with pytest.raises(UnknownGateError):
        gate_matrix("toffoli")
    with pytest.raises(UnknownGateError):
        gate_matrix("rx")


def test_pauli_apply_and_expectation(bell):
    y0 = pauli_apply(init_zero(1), PauliString(ops={0: "Y"}))
    assert y0.amplitudes[1] == pytest.approx(1j)

    assert expectation(bell, PauliString.z_on([0, 1])) == pytest.approx(1.0)
    assert expectation(bell, PauliString.x_on([0, 1])) == pytest.approx(1.0)
    assert expectation(bell, PauliString.z_on([0])) == pytest.approx(0.0, abs=1e-12)
    assert expectation(bell, PauliString.z_on([0, 1], sign=-1)) == pytest.approx(-1.0)

    # exp(iπ/2·X)|0> = i|1>
    rotated = apply_pauli_exp(init_zero(1), PauliString.x_on([0]), np.pi / 2)
    assert rotated.amplitudes[1] == pytest.approx(1j)
    assert abs(overlap(rotated, rotated)) == pytest.approx(1.0)

    with pytest.raises(ValidationError):
        PauliString(ops={})
    with pytest.raises(ValidationError):
        PauliString(ops={0: "Z"}, sign=2)


def test_sample_is_reproducible(bell):
    a = sample(bell, 500, seed=7)
    b = sample(bell, 500, seed=7)
    np.testing.assert_array_equal(a.bits, b.bits)
    assert a.n_shots == 500 and a.n_qubits == 2
    # в состоянии Белла кубиты всегда совпадают
    assert np.all(a.bits[:, 0] == a.bits[:, 1])
    kept = a.select(a.bits[:, 0] == 0)
    assert kept.retention == pytest.approx(kept.n_shots / 500)


def test_project_and_cap(bell):
    probability, post = project(bell, 0, 1)
    assert probability == pytest.approx(0.5)
    assert abs(post.amplitudes[3]) == pytest.approx(1.0)
    _, zero = project(init_zero(1), 0, 0)
    with pytest.raises(ZeroProbabilityError):
        project(zero, 0, 1)

    with pytest.raises(QubitCapExceededError):
        init_zero(5, cap=4)
    with pytest.raises(QubitCapExceededError):
        init_zero(0)

    wide = extend_zero(bell, 2)
    assert wide.n_qubits == 4
    np.testing.assert_allclose(reduce_zero_qubits(wide, 2).amplitudes, bell.amplitudes)
    with pytest.raises(NonZeroQubitError):
        reduce_zero_qubits(apply_gate(wide, "x", [3]), 2)


def _random_state(n, rng):
    return from_amplitudes(rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n))


def _random_pauli(n, rng, max_weight=None):
    weight = int(rng.integers(1, (max_weight or n) + 1))
    qubits = sorted(rng.choice(n, size=weight, replace=False).tolist())
    return PauliString(ops={q: "XYZ"[int(rng.integers(3))] for q in qubits}, sign=int(rng.choice([1, -1])))


def _dense_pauli(p, n):
    """Полная матрица строки Паули; кубит 0 - младший бит, поэтому он последний в kron."""
    matrix = np.eye(1, dtype=complex)
    for q in reversed(range(n)):
        matrix = np.kron(matrix, PAULI_MATRICES[p.ops.get(q, "I")])
    return p.sign * matrix


def _commute(p, q):
    clashes = sum(1 for k in set(p.ops) & set(q.ops) if p.ops[k] != q.ops[k])
    return clashes % 2 == 0


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_norm_preserved_over_random_circuit(seed):
    rng = np.random.default_rng(seed)
    n = 6
    names = sorted(NATIVE_GATES)
    state = _random_state(n, rng)
    for _ in range(1000):
        name = names[int(rng.integers(len(names)))]
        arity, n_params, _ = NATIVE_GATES[name]
        targets = rng.choice(n, size=arity, replace=False).tolist()
        params = rng.uniform(-np.pi, np.pi, size=n_params).tolist()
        if name == "rn":
            axis = rng.normal(size=3)
            params = [*(axis / np.linalg.norm(axis)), params[-1]]
        state = apply_gate(state, name, targets, params)
    assert state.norm() == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("seed", range(5))
def test_pauli_exp_inverse_and_commuting_order(seed):
    """exp(iθP)·exp(-iθP) = 1; экспоненты коммутирующих строк переставимы."""
    rng = np.random.default_rng(seed)
    n = 5
    psi = _random_state(n, rng)
    p = _random_pauli(n, rng)
    theta = float(rng.uniform(-np.pi, np.pi))
    back = apply_pauli_exp(apply_pauli_exp(psi, p, theta), p, -theta)
    np.testing.assert_allclose(back.amplitudes, psi.amplitudes, atol=1e-12)

    q = _random_pauli(n, rng)
    while not _commute(p, q):
        q = _random_pauli(n, rng)
    a, b = rng.uniform(-np.pi, np.pi, size=2)
    pq = apply_pauli_exp(apply_pauli_exp(psi, p, a), q, b)
    qp = apply_pauli_exp(apply_pauli_exp(psi, q, b), p, a)
    np.testing.assert_allclose(pq.amplitudes, qp.amplitudes, atol=1e-12)


@pytest.mark.parametrize("seed", range(6))
def test_pauli_exp_matches_matrix_exponential(seed):
    rng = np.random.default_rng(seed)
    n = 4
    psi = _random_state(n, rng)
    p = _random_pauli(n, rng, max_weight=4)
    theta = float(rng.uniform(-np.pi, np.pi))
    expected = la.expm(1j * theta * _dense_pauli(p, n)) @ psi.amplitudes
    np.testing.assert_allclose(apply_pauli_exp(psi, p, theta).amplitudes, expected, atol=1e-10)
    assert expectation(psi, p) == pytest.approx(float(np.real(np.vdot(psi.amplitudes, _dense_pauli(p, n) @ psi.amplitudes))))
