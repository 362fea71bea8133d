# src/mitigation/errors.py
# --- agent_meta ---
# role: mitigation-errors
# owner: @backend
# contract: Исключения подавления ошибок
# last_reviewed: 2026-10-14
# interfaces:
#   - MitigationError, DegenerateReferenceError
#   - FullDepolarizationError, MissingColumnError, QubitCountError
# --- /agent_meta ---

from __future__ import annotations

from typing import List


class MitigationError(Exception):
    """Базовая ошибка подавления ошибок."""


class DegenerateReferenceError(MitigationError):
    """O_depolarized совпадает с O_initial (или E_exact = 0): оценка p_eff не определена."""
    def __init__(self, o_initial: float, o_depolarized: float):
        super().__init__(f"Degenerate references: initial={o_initial}, depolarized={o_depolarized}")
        self.o_initial = o_initial
        self.o_depolarized = o_depolarized


class FullDepolarizationError(MitigationError):
    def __init__(self, p_eff: float):
        super().__init__(f"Cannot rescale at p_eff={p_eff}: state is fully depolarized")
        self.p_eff = p_eff


class MissingColumnError(MitigationError):
    """Критерий постселекции ссылается на отсутствующие столбцы таблицы."""
    def __init__(self, criterion: str, columns: List[int]):
        super().__init__(f"Criterion '{criterion}' needs columns {columns} absent from the shot table")
        self.criterion = criterion
        self.columns = columns


class QubitCountError(MitigationError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"Probability vector of length {got} does not match 2^{expected}")
        self.expected = expected
        self.got = got
