# src/circuits/strings.py
# --- agent_meta ---
# role: circuits-strings
# owner: @backend
# contract: Фрагменты схем для X-струн, пар зарядов и смены базиса измерения
# last_reviewed: 2026-10-13
# interfaces:
#   - build_string(lattice, path) -> Circuit
#   - build_pair(lattice, link) -> Circuit
#   - measure_basis(n_qubits, qubits, basis) -> Circuit
# --- /agent_meta ---

from __future__ import annotations

from typing import Literal, Sequence

from src.lattice import Lattice, PathSpec, path_endpoints

from .builder import CircuitBuilder
from .models import Circuit


def build_string(lattice: Lattice, path: PathSpec | Sequence[int]) -> Circuit:
    """X на каждом ребре пути; заряды появляются только на концах."""
    path_endpoints(lattice, path)
    refs = path.links if isinstance(path, PathSpec) else list(path)
    ids = [lattice.resolve(r) for r in refs]
    return CircuitBuilder().add_many("x", ids).build(lattice.n_links, name="string")


def build_pair(lattice: Lattice, link: int) -> Circuit:
    return CircuitBuilder().add("x", [lattice.resolve(link)]).build(lattice.n_links, name="pair")


def measure_basis(n_qubits: int, qubits: Sequence[int], basis: Literal["Z", "X"]) -> Circuit:
    builder = CircuitBuilder()
    if basis == "X":
        builder.add_many("h", qubits)
    return builder.build(n_qubits, name=f"measure_{basis.lower()}")
