# src/state_engine/errors.py
# --- agent_meta ---
# role: state-engine-errors
# owner: @backend
# contract: Исключения движка вектора состояния
# last_reviewed: 2026-10-12
# interfaces:
#   - StateEngineError
#   - QubitCapExceededError
#   - InvalidTargetsError
#   - UnknownGateError
#   - ZeroProbabilityError
#   - DimensionMismatchError
#   - NonZeroQubitError
# --- /agent_meta ---

from __future__ import annotations

from typing import Sequence


class StateEngineError(Exception):
    """Базовая ошибка движка вектора состояния."""


class QubitCapExceededError(StateEngineError):
    def __init__(self, n_qubits: int, cap: int):
        super().__init__(f"{n_qubits} qubits exceed the configured cap of {cap}")
        self.n_qubits = n_qubits
        self.cap = cap


class InvalidTargetsError(StateEngineError):
    """Цели гейта вне диапазона или повторяются."""
    def __init__(self, targets: Sequence[int], n_qubits: int, reason: str):
        super().__init__(f"Invalid targets {list(targets)} for {n_qubits} qubits: {reason}")
        self.targets = list(targets)
        self.n_qubits = n_qubits


class UnknownGateError(StateEngineError):
    def __init__(self, name: str):
        super().__init__(f"Gate '{name}' is not in the native set")
        self.name = name


class ZeroProbabilityError(StateEngineError):
    """Запрошена проекция на ветку с нулевой вероятностью."""
    def __init__(self, qubit: int, outcome: int, probability: float):
        super().__init__(f"Outcome {outcome} on qubit {qubit} has probability {probability:.3e}")
        self.qubit = qubit
        self.outcome = outcome
        self.probability = probability


class DimensionMismatchError(StateEngineError):
    def __init__(self, n_a: int, n_b: int):
        super().__init__(f"State dimensions differ: {n_a} vs {n_b} qubits")
        self.n_a = n_a
        self.n_b = n_b


class NonZeroQubitError(StateEngineError):
    """Отбрасываемые кубиты не находятся в |0>."""
    def __init__(self, weight: float):
        super().__init__(f"Dropped qubits carry weight {weight:.3e} outside |0>")
        self.weight = weight
