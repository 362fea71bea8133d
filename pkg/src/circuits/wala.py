# src/circuits/wala.py
# --- agent_meta ---
# role: circuits-wala
# owner: @backend
# contract: Схема подготовки WALA-состояния Π_p(cos θ/2 + sin θ/2·B_p)|0> в режимах ancilla и ancilla_free
# last_reviewed: 2026-10-13
# interfaces:
#   - build_wala(lattice, theta, mode) -> Circuit
# --- /agent_meta ---

from __future__ import annotations

import math
from typing import Literal

from src.lattice import Lattice

from .builder import CircuitBuilder
from .errors import InvalidThetaError
from .models import Circuit

WalaMode = Literal["ancilla", "ancilla_free"]


def build_wala(lattice: Lattice, theta: float, mode: WalaMode = "ancilla") -> Circuit:
    """Схема WALA.

    Плакетки обходятся по строкам снизу вверх: верхнее ребро плакетки (r, c)
    является нижним ребром плакетки (r+1, c) и к моменту поворота ещё в |0>.

    ancilla: Ry(θ) на анцилле каждой плакетки, CNOT анцилла→верх, CNOT верх→анцилла
    (анцилла возвращается в |0>), затем веер CNOT верх→три остальных ребра.
    ancilla_free: Ry(θ) прямо на верхнем ребре и тот же веер.
    """
    if not 0.0 <= theta <= math.pi:
        raise InvalidThetaError(theta)
    n_links = lattice.n_links
    builder = CircuitBuilder()

    if mode == "ancilla":
        ancillas = [n_links + p for p in range(lattice.n_plaquettes)]
        builder.add_many("ry", ancillas, [theta])
        for p, support in enumerate(lattice.plaquette_supports):
            top, rest = support[0], support[1:]
            a = ancillas[p]
            builder.add("cnot", [a, top], tag="wala")
            builder.add("cnot", [top, a], tag="wala")
            for target in rest:
                builder.add("cnot", [top, target], tag="wala")
        return builder.build(n_links + len(ancillas), ancillas=ancillas, name="wala_ancilla")

    if mode == "ancilla_free":
        for support in lattice.plaquette_supports:
            top, rest = support[0], support[1:]
            builder.add("ry", [top], [theta])
            for target in rest:
                builder.add("cnot", [top, target], tag="wala")
        return builder.build(n_links, name="wala_ancilla_free")

    raise ValueError(f"unknown WALA mode '{mode}'")
