# tests/observables/test_charges.py
# --- agent_meta ---
# role: observables-charges-test
# owner: @backend
# contract: Тестирует наблюдаемые зарядов по выстрелам и их точные аналоги по вектору состояния
# last_reviewed: 2026-10-16
# interfaces:
#   - test_vertex_parities()
#   - test_mean_separation_and_sector_guard()
#   - test_conditional_and_heatmap()
#   - test_excitation_distance()
#   - test_exact_observables()
#   - test_mixed_state_separation_by_sampling()
# --- /agent_meta ---

import numpy as np
import pytest

from src.circuits import build_pair, execute
from src.lattice import ExtraLink, LatticeSpec, Side, build_lattice, mixed_state_mean_separation
from src.observables import (
    EmptyTableError,
    LengthMismatchError,
    SectorMismatchError,
    conditional_map,
    exact_charge_distribution,
    exact_conditional_map,
    exact_excitation_probability,
    exact_heatmap,
    exact_mean_separation,
    excitation_distance,
    excitation_heatmap,
    excitation_probability,
    mean_separation,
    sector_histogram,
    sector_sizes,
    vertex_parities,
    z_field_map,
)
from src.reference import wala_state


@pytest.fixture
def lattice_4x3():
    return build_lattice(LatticeSpec(lx=4, ly=3))


def _bits(lattice, *labels):
    row = np.zeros(lattice.n_links, dtype=np.uint8)
    for label in labels:
        row[lattice.resolve(label)] = 1
    return row


@pytest.fixture
def two_pairs(lattice_4x3):
    """Пара на расстоянии 1 (h(1,1)) и пара на расстоянии 2 (h(0,0), h(0,1))"""
    return np.stack([_bits(lattice_4x3, "h(1,1)"), _bits(lattice_4x3, "h(0,0)", "h(0,1)")])


def test_vertex_parities(lattice_4x3):
    record = vertex_parities(_bits(lattice_4x3, "h(1,1)"), lattice_4x3)
    assert record.violated == ((1, 1), (1, 2))
    assert record.sector == 2
    assert sum(1 for p in record.parities if p == -1) == 2
    assert vertex_parities(_bits(lattice_4x3), lattice_4x3).sector == 0
    with pytest.raises(LengthMismatchError):
        vertex_parities([0, 1], lattice_4x3)


def test_mean_separation_and_sector_guard(lattice_4x3, two_pairs):
    estimate = mean_separation(two_pairs, lattice_4x3)
    assert estimate.value == pytest.approx(1.5)
    assert estimate.stderr == pytest.approx(0.5)
    assert sector_histogram(two_pairs, lattice_4x3) == {2: 1.0}

    mixed = np.vstack([two_pairs, _bits(lattice_4x3)])
    with pytest.raises(SectorMismatchError):
        mean_separation(mixed, lattice_4x3)
    with pytest.raises(EmptyTableError):
        mean_separation(two_pairs[:0], lattice_4x3)


def test_conditional_and_heatmap(lattice_4x3, two_pairs):
    cmap = conditional_map(two_pairs, lattice_4x3, (1, 1))
    assert cmap.p_reference.value == pytest.approx(0.5)
    assert cmap.partner[(1, 2)] == pytest.approx(1.0)
    assert sum(cmap.partner.values()) == pytest.approx(1.0)
    assert conditional_map(two_pairs, lattice_4x3, (2, 3)).partner is None

    heat = excitation_heatmap(two_pairs, lattice_4x3)
    assert heat[(1, 1)].value == pytest.approx(0.0)
    assert heat[(2, 0)].value == pytest.approx(1.0)
    assert excitation_probability(two_pairs, lattice_4x3, (0, 0)).value == pytest.approx(0.5)

    z = z_field_map(two_pairs)
    assert z[lattice_4x3.resolve("h(1,1)")].value == pytest.approx(0.0)
    assert z[lattice_4x3.resolve("v(0,0)")].value == pytest.approx(1.0)


def test_excitation_distance():
    lattice = build_lattice(LatticeSpec(lx=4, ly=3, pinned_links=(ExtraLink(side=Side.LEFT, row=1, col=0),)))
    shots = np.stack([
        _bits(lattice, "pinned-left(1,0)"),
        _bits(lattice, "pinned-left(1,0)", "h(1,0)"),
    ])
    assert excitation_distance(shots, lattice, (1, 0)).value == pytest.approx(0.5)
    with pytest.raises(SectorMismatchError):
        excitation_distance(np.stack([_bits(lattice, "h(1,1)")]), lattice, (1, 0))


def test_exact_observables():
    lattice = build_lattice(LatticeSpec(lx=2, ly=3))
    state = execute(build_pair(lattice, "h(1,0)"), wala_state(lattice, np.pi / 2))

    assert exact_charge_distribution(state, lattice) == pytest.approx({2: 1.0})
    assert exact_mean_separation(state, lattice) == pytest.approx(1.0)
    heat = exact_heatmap(state, lattice)
    assert heat[(1, 0)] == pytest.approx(-1.0)
    assert heat[(0, 0)] == pytest.approx(1.0)
    assert exact_excitation_probability(state, lattice, (1, 1)) == pytest.approx(1.0)
    cmap = exact_conditional_map(state, lattice, (1, 0))
    assert cmap.partner[(1, 1)] == pytest.approx(1.0)

    vacuum = wala_state(lattice, np.pi / 2)
    with pytest.raises(EmptyTableError):
        exact_mean_separation(vacuum, lattice)


@pytest.mark.parametrize("lx, ly", [(2, 3), (3, 3), (4, 3)])
def test_mixed_state_separation_by_sampling(lx, ly):
    """Равномерные случайные рёбра (смешанное состояние в Z-базисе) в секторе двух зарядов
    дают среднее расстояние mixed_state_mean_separation в пределах 3σ."""
    lattice = build_lattice(LatticeSpec(lx=lx, ly=ly))
    rng = np.random.default_rng(2024 + lx * 10 + ly)
    bits = rng.integers(0, 2, size=(200_000, lattice.n_links), dtype=np.uint8)
    two = bits[sector_sizes(bits, lattice) == 2]
    assert two.shape[0] > 1000
    estimate = mean_separation(two, lattice)
    expected = float(mixed_state_mean_separation(lx, ly))
    assert abs(estimate.value - expected) <= 3 * estimate.stderr
