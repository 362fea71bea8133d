# src/harness/preparation.py
# --- agent_meta ---
# role: harness-preparation
# owner: @backend
# contract: Начальные состояния и схемы подготовки по PrepSpec: WALA, пара, струна, суперпозиция, торический, поляризованный
# last_reviewed: 2026-10-15
# interfaces:
#   - resolve_theta(lattice, params, prep) -> float
#   - prep_circuit(lattice, params, prep) -> Circuit
#   - prepare_state(lattice, params, prep) -> StateVector
#   - noisy_prep_circuit(lattice, params, prep) -> Optional[Circuit]
# --- /agent_meta ---

from __future__ import annotations

import math
from typing import Optional

from src.circuits import (
    Circuit,
    HamiltonianParams,
    build_pair,
    build_string,
    build_superposition_prep,
    build_wala,
    execute,
)
from src.lattice import (
    Lattice,
    central_horizontal_link,
    default_bump_path,
    default_superposition_paths,
)
from src.state_engine import StateVector, init_zero
from src.utils import get_logger
from src.wala import optimize_theta

from .options import PrepSpec

_log = get_logger(__name__)


def resolve_theta(lattice: Lattice, params: HamiltonianParams, prep: PrepSpec) -> float:
    if prep.kind == "toric":
        return math.pi / 2
    if prep.kind == "polarized":
        return 0.0
    if prep.theta is not None:
        return prep.theta
    return optimize_theta(lattice.lx, lattice.ly, params).theta


def prep_circuit(lattice: Lattice, params: HamiltonianParams, prep: PrepSpec) -> Circuit:
    """Схема подготовки из |0…0> для зашумлённого прогона (WALA с анциллами и X-струны).

    Суперпозиция требует проекции анциллы и схемой без измерения не выражается.
    """
    if prep.kind == "wala_superposition":
        raise ValueError("superposition preparation needs a mid-circuit projection; use prepare_state")
    theta = resolve_theta(lattice, params, prep)
    circuit = build_wala(lattice, theta, mode="ancilla")
    if prep.kind == "wala_pair":
        link = central_horizontal_link(lattice) if prep.link is None else lattice.resolve(prep.link)
        circuit = circuit.compose(build_pair(lattice, link))
    elif prep.kind == "wala_string":
        circuit = circuit.compose(build_string(lattice, prep.path or default_bump_path(lattice)))
    return circuit


def prepare_state(lattice: Lattice, params: HamiltonianParams, prep: PrepSpec) -> StateVector:
    """Бесшумное начальное состояние на рёбрах решётки."""
    if prep.kind == "polarized":
        return init_zero(lattice.n_links)
    if prep.kind != "wala_superposition":
        return execute(prep_circuit(lattice, params, prep), init_zero(lattice.n_links))

    theta = resolve_theta(lattice, params, prep)
    psi0 = execute(build_wala(lattice, theta, mode="ancilla_free"), init_zero(lattice.n_links))
    if prep.s1 is None or prep.s2 is None:
        s1, s2 = default_superposition_paths(lattice)
    else:
        s1, s2 = prep.s1, prep.s2
    superposition = build_superposition_prep(lattice, s1, s2, branch=prep.branch, mode=prep.mode)
    _log.debug("Суперпозиция ψ%s (%s), θ=%.4f", prep.branch, prep.mode, theta)
    return superposition.prepare(psi0)


def noisy_prep_circuit(lattice: Lattice, params: HamiltonianParams, prep: PrepSpec) -> Optional[Circuit]:
    """Схема подготовки для траекторий или None, если стартовать надо с идеального состояния."""
    if prep.kind == "wala_superposition":
        return None
    return prep_circuit(lattice, params, prep)
