# src/observables/errors.py
# --- agent_meta ---
# role: observables-errors
# owner: @backend
# contract: Исключения измеряемых величин
# last_reviewed: 2026-10-14
# interfaces:
#   - ObservableError, EmptyTableError, LengthMismatchError, SectorMismatchError
#   - GridMismatchError, UnknownMethodError, LinkOutOfRangeError
# --- /agent_meta ---

from __future__ import annotations

from typing import Any


class ObservableError(Exception):
    """Базовая ошибка измеряемых величин."""


class EmptyTableError(ObservableError):
    def __init__(self, observable: str):
        super().__init__(f"No shots left to estimate '{observable}'")
        self.observable = observable


class LengthMismatchError(ObservableError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"Bitstring covers {got} qubits, lattice has {expected} links")
        self.expected = expected
        self.got = got


class SectorMismatchError(ObservableError):
    """В таблице есть выстрелы вне требуемого зарядового сектора."""
    def __init__(self, expected: int, found: Any):
        super().__init__(f"Expected every shot in sector {expected}, found sectors {found}")
        self.expected = expected
        self.found = found


class GridMismatchError(ObservableError):
    def __init__(self, left: int, right: int):
        super().__init__(f"Time grids differ: {left} vs {right} points")
        self.left = left
        self.right = right


class UnknownMethodError(ObservableError):
    def __init__(self, method: str):
        super().__init__(f"Unknown correlator method '{method}'")
        self.method = method


class LinkOutOfRangeError(ObservableError):
    def __init__(self, link: int, n_links: int):
        super().__init__(f"Link {link} outside 0..{n_links - 1}")
        self.link = link
        self.n_links = n_links
