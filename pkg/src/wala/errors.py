# src/wala/errors.py
# --- agent_meta ---
# role: wala-errors
# owner: @backend
# contract: Исключения аналитики WALA
# last_reviewed: 2026-10-13
# interfaces:
#   - WalaError
#   - InvalidCouplingError
# --- /agent_meta ---


class WalaError(Exception):
    """Базовая ошибка аналитики WALA."""


class InvalidCouplingError(WalaError):
    def __init__(self, name: str, value: float, requirement: str):
        super().__init__(f"{name}={value} violates {requirement}")
        self.name = name
        self.value = value
