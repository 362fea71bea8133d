# src/mitigation/postselect.py
# --- agent_meta ---
# role: mitigation-postselect
# owner: @backend
# contract: Постселекция выстрелов по анциллам и размеру зарядового сектора; биты не меняются, только строки
# last_reviewed: 2026-10-14
# interfaces:
#   - postselect(shots, criteria, lattice=None) -> ShotTable
# --- /agent_meta ---

from __future__ import annotations

from dataclasses import replace
from typing import Optional, Union

import numpy as np

from src.lattice import Lattice
from src.observables import sector_sizes
from src.state_engine import ShotTable
from src.utils import get_logger

from .errors import MissingColumnError, MitigationError
from .models import PostselectCriteria

_log = get_logger(__name__)


def postselect(
    shots: ShotTable,
    criteria: Union[PostselectCriteria, dict],
    lattice: Optional[Lattice] = None,
) -> ShotTable:
    """Оставляет строки, удовлетворяющие всем критериям.

    Доля оставшихся домножается в shots.retention и пишется в meta["retention"].
    Пустой результат не ошибка: таблица с нулём строк и retention = 0.
    """
    if isinstance(criteria, dict):
        criteria = PostselectCriteria(**criteria)
    keep = np.ones(shots.n_shots, dtype=bool)

    if criteria.ancilla_zero and shots.ancilla_columns:
        missing = [c for c in shots.ancilla_columns if c >= shots.n_qubits]
        if missing:
            raise MissingColumnError("ancilla_zero", missing)
        keep &= ~shots.ancilla_bits.any(axis=1)

    if criteria.charge_count is not None:
        if lattice is None:
            raise MitigationError("charge_count post-selection needs the lattice")
        keep &= sector_sizes(shots, lattice) == criteria.charge_count

    selected = shots.select(keep)
    meta = dict(selected.meta)
    meta["retention"] = selected.retention
    if selected.n_shots == 0:
        _log.warning("Постселекция %s не оставила ни одного выстрела из %d", criteria.model_dump(), shots.n_shots)
    else:
        _log.debug("Постселекция %s: осталось %d из %d", criteria.model_dump(), selected.n_shots, shots.n_shots)
    return replace(selected, meta=meta)
