# src/circuits/trotter.py
# --- agent_meta ---
# role: circuits-trotter
# owner: @backend
# contract: Компиляция шага Троттера первого порядка (полевые члены, затем стабилизаторы) в direct и gate_level режимах
# last_reviewed: 2026-10-13
# interfaces:
#   - build_trotter_step(lattice, spec) -> Circuit
#   - resolve_field_mask(lattice, field_mask) -> tuple[int, ...]
#   - field_rotation(params, dt) -> tuple[float, float, float, float] | None
#   - stabilizer_ancilla_plan(lattice, spec) -> (list[int], bool)
# --- /agent_meta ---

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

from src.lattice import Lattice
from src.state_engine import get_engine_settings
from src.utils import get_logger

from .builder import CircuitBuilder
from .errors import AncillaBudgetError, FieldMaskError
from .models import Circuit, HamiltonianParams, TrotterSpec

_log = get_logger(__name__)


def resolve_field_mask(lattice: Lattice, field_mask: Optional[Sequence[int]]) -> Tuple[int, ...]:
    """None означает «все закреплённые рёбра»; маскировать можно только закреплённые."""
    if field_mask is None:
        return tuple(lattice.pinned_link_ids)
    bad = [l for l in field_mask if not lattice.links[l].pinned]
    if bad:
        raise FieldMaskError(bad)
    return tuple(sorted(set(field_mask)))


def field_rotation(params: HamiltonianParams, dt: float) -> Optional[Tuple[float, float, float, float]]:
    """Параметры гейта rn для exp(-i·H_field·dt) на одном ребре.

    exp(+i·dt·(λX + h_E·Z)) = R_n(α) с n = (λ, 0, h_E)/‖·‖ и α = -2·dt·‖(λ, h_E)‖.
    """
    norm = math.hypot(params.lam, params.h_e)
    if norm == 0.0:
        return None
    return (params.lam / norm, 0.0, params.h_e / norm, -2.0 * dt * norm)


def stabilizer_ancilla_plan(lattice: Lattice, spec: TrotterSpec, cap: Optional[int] = None) -> Tuple[List[int], bool]:
    """Индексы анцилл стабилизаторов и флаг переиспользования одной анциллы."""
    cap = get_engine_settings().max_qubits if cap is None else cap
    base = lattice.n_links + spec.ancilla_offset
    n_stab = lattice.n_vertices + lattice.n_plaquettes
    if base + n_stab <= cap:
        return list(range(base, base + n_stab)), False
    if not spec.recycle_ancilla:
        raise AncillaBudgetError(base + n_stab, cap)
    return [base], True


def _append_fields(builder: CircuitBuilder, lattice: Lattice, spec: TrotterSpec) -> None:
    rotation = field_rotation(spec.params, spec.dt)
    if rotation is None:
        return
    masked = set(resolve_field_mask(lattice, spec.field_mask))
    for link in lattice.links:
        if link.id not in masked:
            builder.add("rn", [link.id], rotation, tag="field")


def _parity_block(
    builder: CircuitBuilder,
    support: Sequence[int],
    ancilla: int,
    angle: float,
    basis_x: bool,
    tag: str,
) -> None:
    """exp(i·angle·P) через накопление чётности на анцилле: CNOT-лесенка, Rz(-2·angle), обратная лесенка."""
    if basis_x:
        builder.add_many("h", support)
    for q in support:
        builder.add("cnot", [q, ancilla], tag=tag)
    builder.add("rz", [ancilla], [-2.0 * angle], tag=tag)
    for q in reversed(support):
        builder.add("cnot", [q, ancilla], tag=tag)
    if basis_x:
        builder.add_many("h", support)


def build_trotter_step(lattice: Lattice, spec: TrotterSpec, cap: Optional[int] = None) -> Circuit:
    """Один шаг U_Plaquettes·U_Fields: сначала полевые повороты, затем экспоненты стабилизаторов."""
    params = spec.params
    builder = CircuitBuilder()
    _append_fields(builder, lattice, spec)
    builder.barrier()

    vertex_terms = [
        (support, params.j_e * spec.dt * params.sign_of(lattice.vertex_of(v)))
        for v, support in enumerate(lattice.vertex_supports)
    ]
    plaquette_terms = [(support, params.j_m * spec.dt) for support in lattice.plaquette_supports]

    if spec.mode == "direct":
        for support, angle in vertex_terms:
            builder.add("pexp", support, [angle], pauli="Z" * len(support), tag="vertex")
        for support, angle in plaquette_terms:
            builder.add("pexp", support, [angle], pauli="X" * len(support), tag="plaquette")
        n_qubits = lattice.n_links + spec.ancilla_offset
        circuit = builder.build(max(n_qubits, 1), name="trotter_direct")
        _log.debug("Шаг Троттера (direct): dt=%.3f, гейтов=%d", spec.dt, len(circuit.gates))
        return circuit

    ancillas, recycled = stabilizer_ancilla_plan(lattice, spec, cap)
    terms = [(s, a, False, "vertex") for s, a in vertex_terms] + [(s, a, True, "plaquette") for s, a in plaquette_terms]
    for i, (support, angle, basis_x, tag) in enumerate(terms):
        ancilla = ancillas[0] if recycled else ancillas[i]
        _parity_block(builder, support, ancilla, angle, basis_x, tag)
    n_qubits = max(ancillas) + 1
    circuit = builder.build(n_qubits, ancillas=ancillas, name="trotter_gate_level")
    _log.debug(
        "Шаг Троттера (gate_level): dt=%.3f, CNOT=%d, анцилл=%d, переиспользование=%s",
        spec.dt, circuit.entangling_count, len(ancillas), recycled,
    )
    return circuit
