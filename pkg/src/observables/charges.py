# src/observables/charges.py
# --- agent_meta ---
# role: observables-charges
# owner: @backend
# contract: Зарядовые наблюдаемые по выстрелам и точно по |амплитуда|²: чётности вершин, расстояние пары, карты
# last_reviewed: 2026-10-14
# interfaces:
#   - vertex_parity_matrix(bits, lattice) -> np.ndarray
#   - vertex_parities(bitstring, lattice) -> ChargeRecord
#   - sector_sizes(shots, lattice), sector_histogram(shots, lattice)
#   - mean_separation(shots, lattice) -> Estimate
#   - excitation_heatmap(shots, lattice), z_field_map(shots)
#   - conditional_map(shots, lattice, reference) -> ConditionalMap
#   - excitation_probability(shots, lattice, vertex) -> Estimate
#   - excitation_distance(shots, lattice, origin) -> Estimate
#   - distribution_mean_separation(probs, lattice) -> float
#   - exact_* - те же величины по вектору состояния
# --- /agent_meta ---

from __future__ import annotations

from collections import Counter
from typing import Dict, Sequence, Union

import numpy as np

from src.lattice import Lattice, manhattan_distance
from src.state_engine import PauliString, ShotTable, StateVector, expectation, indices_to_bits, probabilities

from .errors import EmptyTableError, LengthMismatchError, SectorMismatchError
from .models import ChargeRecord, ConditionalMap, Estimate, VertexId


def _link_bits(shots: Union[ShotTable, np.ndarray], lattice: Lattice) -> np.ndarray:
    bits = shots.link_bits if isinstance(shots, ShotTable) else np.atleast_2d(np.asarray(shots))
    if bits.shape[1] < lattice.n_links:
        raise LengthMismatchError(lattice.n_links, bits.shape[1])
    return bits[:, : lattice.n_links]


def _mean_estimate(samples: np.ndarray) -> Estimate:
    n = samples.shape[0]
    if n == 0:
        raise EmptyTableError("mean")
    stderr = float(np.std(samples, ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return Estimate(float(np.mean(samples)), stderr)


def vertex_parity_matrix(bits: Union[ShotTable, np.ndarray], lattice: Lattice) -> np.ndarray:
    """(выстрелы × вершины), значения ±1: (−1)^(число единиц на носителе вершины)."""
    bits = _link_bits(bits, lattice)
    out = np.empty((bits.shape[0], lattice.n_vertices), dtype=np.int8)
    for v, support in enumerate(lattice.vertex_supports):
        out[:, v] = 1 - 2 * (bits[:, list(support)].sum(axis=1) % 2)
    return out


def vertex_parities(bitstring: Union[Sequence[int], np.ndarray], lattice: Lattice) -> ChargeRecord:
    bits = np.asarray(bitstring, dtype=np.uint8)
    if bits.ndim != 1 or bits.shape[0] != lattice.n_links:
        raise LengthMismatchError(lattice.n_links, int(bits.shape[-1]) if bits.ndim else 0)
    row = vertex_parity_matrix(bits[None, :], lattice)[0]
    vertices = lattice.vertices
    return ChargeRecord(
        parities=tuple(int(x) for x in row),
        violated=tuple(vertices[v] for v in np.flatnonzero(row == -1)),
    )


def sector_sizes(shots: Union[ShotTable, np.ndarray], lattice: Lattice) -> np.ndarray:
    return (vertex_parity_matrix(shots, lattice) == -1).sum(axis=1)


def sector_histogram(shots: Union[ShotTable, np.ndarray], lattice: Lattice) -> Dict[int, float]:
    sizes = sector_sizes(shots, lattice)
    if sizes.shape[0] == 0:
        raise EmptyTableError("sector_histogram")
    counts = Counter(int(s) for s in sizes)
    return {k: counts[k] / sizes.shape[0] for k in sorted(counts)}


def _require_sector(parities: np.ndarray, sector: int, observable: str) -> None:
    if parities.shape[0] == 0:
        raise EmptyTableError(observable)
    sizes = (parities == -1).sum(axis=1)
    if np.any(sizes != sector):
        raise SectorMismatchError(sector, sorted({int(s) for s in sizes}))


def _coords(lattice: Lattice, index: np.ndarray) -> np.ndarray:
    return np.stack([index // lattice.lx, index % lattice.lx], axis=-1)


def mean_separation(shots: Union[ShotTable, np.ndarray], lattice: Lattice) -> Estimate:
    """Среднее манхэттенское расстояние между двумя нарушенными вершинами."""
    parities = vertex_parity_matrix(shots, lattice)
    _require_sector(parities, 2, "mean_separation")
    pair = np.argsort(parities, axis=1, kind="stable")[:, :2]
    a, b = _coords(lattice, pair[:, 0]), _coords(lattice, pair[:, 1])
    return _mean_estimate(np.abs(a - b).sum(axis=1).astype(float))


def excitation_heatmap(shots: Union[ShotTable, np.ndarray], lattice: Lattice) -> Dict[VertexId, Estimate]:
    """<A_v> по каждой вершине."""
    parities = vertex_parity_matrix(shots, lattice).astype(float)
    if parities.shape[0] == 0:
        raise EmptyTableError("excitation_heatmap")
    return {vertex: _mean_estimate(parities[:, v]) for v, vertex in enumerate(lattice.vertices)}


def z_field_map(shots: Union[ShotTable, np.ndarray], n_links: int | None = None) -> Dict[int, Estimate]:
    """<Z_l> по каждому ребру (столбцы рёбер таблицы)."""
    bits = shots.link_bits if isinstance(shots, ShotTable) else np.atleast_2d(np.asarray(shots))
    if n_links is not None:
        bits = bits[:, :n_links]
    if bits.shape[0] == 0:
        raise EmptyTableError("z_field_map")
    z = 1.0 - 2.0 * bits.astype(float)
    return {l: _mean_estimate(z[:, l]) for l in range(bits.shape[1])}


def excitation_probability(shots: Union[ShotTable, np.ndarray], lattice: Lattice, vertex: VertexId) -> Estimate:
    """P(A_v = −1) с биномиальной стандартной ошибкой."""
    parities = vertex_parity_matrix(shots, lattice)
    n = parities.shape[0]
    if n == 0:
        raise EmptyTableError("excitation_probability")
    p = float(np.mean(parities[:, lattice.vertex_index(vertex)] == -1))
    return Estimate(p, float(np.sqrt(p * (1 - p) / n)))


def conditional_map(shots: Union[ShotTable, np.ndarray], lattice: Lattice, reference: VertexId) -> ConditionalMap:
    parities = vertex_parity_matrix(shots, lattice)
    n = parities.shape[0]
    if n == 0:
        raise EmptyTableError("conditional_map")
    ref = lattice.vertex_index(reference)
    excited = parities[:, ref] == -1
    p_ref = float(np.mean(excited))
    p_reference = Estimate(p_ref, float(np.sqrt(p_ref * (1 - p_ref) / n)))
    if not np.any(excited):
        return ConditionalMap(reference, p_reference, None)
    partners = (parities[excited] == -1).astype(float)
    partners[:, ref] = 0.0
    weights = partners.sum(axis=0)
    total = weights.sum()
    distribution = {vertex: (float(weights[v] / total) if total else 0.0) for v, vertex in enumerate(lattice.vertices)}
    return ConditionalMap(reference, p_reference, distribution)


def excitation_distance(shots: Union[ShotTable, np.ndarray], lattice: Lattice, origin: VertexId) -> Estimate:
    """Расстояние единственного подвижного заряда от origin (сектор из одного возбуждения)."""
    parities = vertex_parity_matrix(shots, lattice)
    _require_sector(parities, 1, "excitation_distance")
    where = _coords(lattice, np.argmin(parities, axis=1))
    dist = np.abs(where - np.asarray(origin)).sum(axis=1).astype(float)
    return _mean_estimate(dist)


# Точные версии: распределение по базису вместо выстрелов.

def _basis_parities(state: StateVector, lattice: Lattice) -> tuple[np.ndarray, np.ndarray]:
    """(вероятности по базису рёбер, матрица чётностей для каждого базисного состояния)."""
    probs = probabilities(state)
    if state.n_qubits > lattice.n_links:
        probs = probs.reshape(-1, 1 << lattice.n_links).sum(axis=0)
    bits = indices_to_bits(np.arange(1 << lattice.n_links, dtype=np.int64), lattice.n_links)
    return probs, vertex_parity_matrix(bits, lattice)


def exact_charge_distribution(state: StateVector, lattice: Lattice) -> Dict[int, float]:
    probs, parities = _basis_parities(state, lattice)
    sizes = (parities == -1).sum(axis=1)
    out: Dict[int, float] = {}
    for k in np.unique(sizes):
        weight = float(probs[sizes == k].sum())
        if weight > 0:
            out[int(k)] = weight
    return out


def exact_mean_separation(state: StateVector, lattice: Lattice) -> float:
    """Среднее расстояние пары в секторе двух зарядов (условно на сектор)."""
    return distribution_mean_separation(_basis_parities(state, lattice)[0], lattice)


def distribution_mean_separation(probs: np.ndarray, lattice: Lattice) -> float:
    """То же по распределению (или квазираспределению) на 2^n_links базисных состояниях."""
    probs = np.asarray(probs, dtype=float)
    if probs.shape[0] != 1 << lattice.n_links:
        raise LengthMismatchError(1 << lattice.n_links, probs.shape[0])
    bits = indices_to_bits(np.arange(1 << lattice.n_links, dtype=np.int64), lattice.n_links)
    parities = vertex_parity_matrix(bits, lattice)
    in_sector = (parities == -1).sum(axis=1) == 2
    weight = float(probs[in_sector].sum())
    if weight <= 1e-14:
        raise EmptyTableError("exact_mean_separation")
    pair = np.argsort(parities[in_sector], axis=1, kind="stable")[:, :2]
    dist = np.abs(_coords(lattice, pair[:, 0]) - _coords(lattice, pair[:, 1])).sum(axis=1)
    return float(np.dot(probs[in_sector], dist) / weight)


def exact_heatmap(state: StateVector, lattice: Lattice) -> Dict[VertexId, float]:
    return {
        vertex: expectation(state, PauliString.z_on(lattice.vertex_supports[v]))
        for v, vertex in enumerate(lattice.vertices)
    }


def exact_z_map(state: StateVector, n_links: int | None = None) -> Dict[int, float]:
    n = state.n_qubits if n_links is None else n_links
    return {l: expectation(state, PauliString.z_on([l])) for l in range(n)}


def exact_excitation_probability(state: StateVector, lattice: Lattice, vertex: VertexId) -> float:
    a_v = expectation(state, PauliString.z_on(lattice.vertex_supports[lattice.vertex_index(vertex)]))
    return (1.0 - a_v) / 2.0


def exact_conditional_map(state: StateVector, lattice: Lattice, reference: VertexId) -> ConditionalMap:
    probs, parities = _basis_parities(state, lattice)
    ref = lattice.vertex_index(reference)
    excited = parities[:, ref] == -1
    p_ref = float(probs[excited].sum())
    if p_ref <= 1e-14:
        return ConditionalMap(reference, Estimate(p_ref, 0.0), None)
    partners = (parities[excited] == -1).astype(float)
    partners[:, ref] = 0.0
    weights = probs[excited] @ partners
    total = float(weights.sum())
    distribution = {vertex: (float(weights[v] / total) if total else 0.0) for v, vertex in enumerate(lattice.vertices)}
    return ConditionalMap(reference, Estimate(p_ref, 0.0), distribution)


def exact_excitation_distance(state: StateVector, lattice: Lattice, origin: VertexId) -> float:
    probs, parities = _basis_parities(state, lattice)
    single = (parities == -1).sum(axis=1) == 1
    weight = float(probs[single].sum())
    if weight <= 1e-14:
        raise EmptyTableError("exact_excitation_distance")
    where = np.argmin(parities[single], axis=1)
    dist = np.array([manhattan_distance(lattice.vertex_of(int(v)), origin) for v in where], dtype=float)
    return float(np.dot(probs[single], dist) / weight)
