# src/circuits/errors.py
# --- agent_meta ---
# role: circuits-errors
# owner: @backend
# contract: Исключения компиляторов схем
# last_reviewed: 2026-10-13
# interfaces:
#   - CircuitError (база)
#   - InvalidCircuitError, InvalidThetaError, AncillaBudgetError, FieldMaskError
#   - InvalidPrepError, ZeroNormBranchError, UnsupportedOperatorError
# --- /agent_meta ---

from __future__ import annotations

from typing import Sequence


class CircuitError(Exception):
    """Базовая ошибка компонента схем."""


class InvalidCircuitError(CircuitError):
    """Нарушена структура схемы (кубит дважды в слое, индекс вне диапазона)."""


class InvalidThetaError(CircuitError):
    def __init__(self, theta: float):
        super().__init__(f"WALA angle {theta} outside [0, pi]")
        self.theta = theta


class AncillaBudgetError(CircuitError):
    """Анциллы по одной на стабилизатор не помещаются, а переиспользование выключено."""
    def __init__(self, required: int, cap: int):
        super().__init__(f"Gate-level step needs {required} qubits, cap is {cap} and recycling is disabled")
        self.required = required
        self.cap = cap


class FieldMaskError(CircuitError):
    def __init__(self, links: Sequence[int]):
        super().__init__(f"Field mask may contain only pinned links, got non-pinned {list(links)}")
        self.links = list(links)


class InvalidPrepError(CircuitError):
    """Пути суперпозиции не создают ровно два заряда."""
    def __init__(self, reason: str):
        super().__init__(f"Invalid preparation: {reason}")
        self.reason = reason


class ZeroNormBranchError(CircuitError):
    def __init__(self, branch: str):
        super().__init__(f"Superposition branch '{branch}' has zero norm")
        self.branch = branch


class UnsupportedOperatorError(CircuitError):
    def __init__(self, operator: str):
        super().__init__(f"Hadamard test supports a single-qubit X or Z, got '{operator}'")
        self.operator = operator
