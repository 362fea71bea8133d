# tests/observables/test_correlators.py
# --- agent_meta ---
# role: observables-correlators-test
# owner: @backend
# contract: Тестирует двухвременные корреляторы: оракул, эмуляцию теста Адамара, струнный коррелятор, S_ZZ
# last_reviewed: 2026-10-16
# interfaces:
#   - test_hadamard_matches_oracle()
#   - test_hadamard_with_shots()
#   - test_string_correlator_initial_values()
#   - test_s_zz_and_errors()
#   - test_bump_string_correlators_are_mirror_symmetric()
# --- /agent_meta ---

import numpy as np
import pytest

from src.circuits import HamiltonianParams, TrotterSpec, build_string, execute
from src.lattice import ExtraLink, LatticeSpec, LinkKind, Side, build_lattice, default_bump_path
from src.observables import (
    CorrelatorSeries,
    Estimate,
    GridMismatchError,
    LinkOutOfRangeError,
    UnknownMethodError,
    s_zz,
    string_correlator,
    two_time_zz,
)
from src.reference import wala_state


@pytest.fixture
def pinned_2x3():
    return build_lattice(LatticeSpec(lx=2, ly=3, pinned_links=(ExtraLink(side=Side.LEFT, row=1, col=0),)))


@pytest.fixture
def spec():
    return TrotterSpec(params=HamiltonianParams(h_e=0.6, lam=0.25), dt=0.3, n_steps=3)


def test_hadamard_matches_oracle(pinned_2x3, spec):
    """Тест Адамара без выборки воспроизводит оракул в обоих режимах шага"""
    psi = wala_state(pinned_2x3, 0.8)
    link = pinned_2x3.resolve("h(1,0)")
    oracle = two_time_zz(psi, pinned_2x3, spec, link)
    assert oracle.re[0] == pytest.approx(1.0)
    assert oracle.im[0] == pytest.approx(0.0, abs=1e-12)

    emulated = two_time_zz(psi, pinned_2x3, spec, link, "hadamard_emulated")
    np.testing.assert_allclose(emulated.as_complex(), oracle.as_complex(), atol=1e-10)

    gate_level = spec.model_copy(update={"mode": "gate_level", "n_steps": 2})
    emulated_gl = two_time_zz(psi, pinned_2x3, gate_level, link, "hadamard_emulated")
    np.testing.assert_allclose(emulated_gl.as_complex(), oracle.as_complex()[:3], atol=1e-10)


def test_hadamard_with_shots(pinned_2x3, spec):
    psi = wala_state(pinned_2x3, 0.8)
    link = pinned_2x3.resolve("v(0,0)")
    oracle = two_time_zz(psi, pinned_2x3, spec, link)
    sampled = two_time_zz(psi, pinned_2x3, spec, link, "hadamard_emulated", n_shots=4000, seed=5)
    again = two_time_zz(psi, pinned_2x3, spec, link, "hadamard_emulated", n_shots=4000, seed=5)
    assert sampled.re == again.re
    assert all(e > 0 for e in sampled.re_err[1:])
    for got, want in zip(sampled.as_complex(), oracle.as_complex()):
        assert abs(got - want) < 0.1


def test_string_correlator_initial_values(pinned_2x3, spec):
    psi = wala_state(pinned_2x3, 0.8)
    c1 = string_correlator(psi, pinned_2x3, spec, 1)
    c2 = string_correlator(psi, pinned_2x3, spec, 2)
    assert c1.re[0] == pytest.approx(1.0)
    assert c2.re[0] == pytest.approx(0.0, abs=1e-12)
    assert c1.label == "C[1]"
    assert len(c1.times) == spec.n_steps + 1


def test_s_zz_and_errors(pinned_2x3, spec):
    series = CorrelatorSeries(times=[0.0, 0.3], re=[1.0, 0.5], im=[0.0, 0.1], re_err=[0.0, 0.1])
    scaled = s_zz(series, Estimate(0.5, 0.02))
    assert scaled.re == pytest.approx([0.5, 0.25])
    assert scaled.re_err[1] == pytest.approx(np.hypot(0.5 * 0.1, 0.5 * 0.02))
    assert s_zz(series, 2.0).re == pytest.approx([2.0, 1.0])
    with pytest.raises(GridMismatchError):
        s_zz(series, [Estimate(1.0, 0.0)])

    psi = wala_state(pinned_2x3, 0.8)
    with pytest.raises(LinkOutOfRangeError):
        two_time_zz(psi, pinned_2x3, spec, 99)
    with pytest.raises(UnknownMethodError):
        two_time_zz(psi, pinned_2x3, spec, 0, "classical_shadow")


def _mirror(lattice, link_id):
    """Ребро, зеркальное относительно вертикальной оси решётки."""
    link = lattice.links[link_id]
    if link.pinned:
        other = Side.RIGHT if link.side is Side.LEFT else Side.LEFT
        return lattice.link_index(LinkKind.PINNED, link.row, lattice.lx - 1 - link.col, side=other)
    if link.kind is LinkKind.H:
        return lattice.link_index(LinkKind.H, link.row, lattice.lx - 2 - link.col)
    return lattice.link_index(LinkKind.V, link.row, lattice.lx - 1 - link.col)


@pytest.mark.parametrize("h_e", [0.1, 1.4])
def test_bump_string_correlators_are_mirror_symmetric(h_e):
    """Струна с горбом на 4×3 с рёбрами по обе стороны симметрична: зеркальные рёбра дают один коррелятор."""
    lattice = build_lattice(LatticeSpec(
        lx=4,
        ly=3,
        pinned_links=(ExtraLink(side=Side.LEFT, row=1, col=0), ExtraLink(side=Side.RIGHT, row=1, col=3)),
    ))
    path = [lattice.resolve(ref) for ref in default_bump_path(lattice).links]
    assert sorted(_mirror(lattice, l) for l in path) == sorted(path)

    psi = execute(build_string(lattice, path), wala_state(lattice, 0.8))
    spec = TrotterSpec(params=HamiltonianParams(h_e=h_e, lam=0.25), dt=0.3, n_steps=4)
    for link in range(lattice.n_links):
        partner = _mirror(lattice, link)
        if partner <= link:
            continue
        a = two_time_zz(psi, lattice, spec, link)
        b = two_time_zz(psi, lattice, spec, partner)
        np.testing.assert_allclose(a.as_complex(), b.as_complex(), atol=1e-10)
