# src/circuits/builder.py
# --- agent_meta ---
# role: circuits-builder
# owner: @backend
# contract: Жадная (ASAP) раскладка гейтов по слоям
# last_reviewed: 2026-10-13
# interfaces:
#   - CircuitBuilder.add(name, qubits, params, pauli, tag) -> CircuitBuilder
#   - CircuitBuilder.extend(circuit) -> CircuitBuilder
#   - CircuitBuilder.build(n_qubits, ancillas, name) -> Circuit
# --- /agent_meta ---

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence

from .models import Circuit, Gate


class CircuitBuilder:
    """Каждый гейт встаёт в первый слой после последнего занятия его кубитов."""

    def __init__(self) -> None:
        self._layers: List[List[Gate]] = []
        self._frontier: Dict[int, int] = {}
        self._floor = 0

    def add_gate(self, gate: Gate) -> "CircuitBuilder":
        layer = max((self._frontier.get(q, 0) for q in gate.qubits), default=0)
        layer = max(layer, self._floor)
        while len(self._layers) <= layer:
            self._layers.append([])
        self._layers[layer].append(gate)
        for q in gate.qubits:
            self._frontier[q] = layer + 1
        return self

    def add(
        self,
        name: str,
        qubits: Sequence[int],
        params: Sequence[float] = (),
        *,
        pauli: Optional[str] = None,
        tag: Optional[str] = None,
    ) -> "CircuitBuilder":
        return self.add_gate(Gate(name=name, qubits=tuple(qubits), params=tuple(float(p) for p in params), pauli=pauli, tag=tag))

    def add_many(self, name: str, qubits: Iterable[int], params: Sequence[float] = ()) -> "CircuitBuilder":
        for q in qubits:
            self.add(name, [q], params)
        return self

    def barrier(self) -> "CircuitBuilder":
        """Следующие гейты начинаются не раньше текущей глубины."""
        self._floor = len(self._layers)
        return self

    def extend(self, circuit: Circuit) -> "CircuitBuilder":
        for gate in circuit.gates:
            self.add_gate(gate)
        return self

    def build(self, n_qubits: int, ancillas: Sequence[int] = (), name: str = "") -> Circuit:
        return Circuit(
            n_qubits=n_qubits,
            layers=tuple(tuple(layer) for layer in self._layers),
            ancillas=tuple(ancillas),
            name=name,
        )
