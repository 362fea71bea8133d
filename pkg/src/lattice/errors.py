# src/lattice/errors.py
# --- agent_meta ---
# role: lattice-errors
# owner: @backend
# contract: Исключения уровня домена для геометрии решётки
# last_reviewed: 2026-10-12
# interfaces:
#   - LatticeError
#   - InvalidLatticeError
#   - PinnedLinkError
#   - InvalidPathError
#   - UnknownLinkError
# --- /agent_meta ---

from __future__ import annotations

from typing import Optional


class LatticeError(Exception):
    """Базовая ошибка компонента решётки."""


class InvalidLatticeError(LatticeError):
    """Размеры решётки не позволяют построить ни одной плакетки."""
    def __init__(self, lx: int, ly: int):
        super().__init__(f"Lattice {lx}x{ly} is invalid: lx and ly must be >= 2")
        self.lx = lx
        self.ly = ly


class PinnedLinkError(LatticeError):
    """Закреплённое ребро прикреплено не к граничной вершине своей стороны."""
    def __init__(self, side: str, row: int, col: int, reason: str = "not a boundary vertex"):
        super().__init__(f"Pinned link {side}({row},{col}) rejected: {reason}")
        self.side = side
        self.row = row
        self.col = col
        self.reason = reason


class InvalidPathError(LatticeError):
    """Путь X-струны не связен или не даёт ожидаемых концов."""
    def __init__(self, reason: str, links: Optional[list] = None):
        super().__init__(f"Invalid path: {reason}")
        self.reason = reason
        self.links = list(links or [])


class UnknownLinkError(LatticeError):
    """Ссылка на ребро, которого нет на решётке."""
    def __init__(self, ref: object):
        super().__init__(f"Link '{ref}' does not exist on this lattice")
        self.ref = ref
