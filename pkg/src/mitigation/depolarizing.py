# src/mitigation/depolarizing.py
# --- agent_meta ---
# role: mitigation-depolarizing
# owner: @backend
# contract: Модель глобальной деполяризации: оценка p_eff по опорной наблюдаемой и обратное перемасштабирование
# last_reviewed: 2026-10-14
# interfaces:
#   - global_depolarize(value, p, o_depolarized) -> float
#   - effective_depol(measured, o_initial, o_depolarized) -> float
#   - clamp_p_eff(raw) -> (float, bool)
#   - rescale(measured, p_eff, o_depolarized) -> float
#   - calibrate(times, measured, o_initial, o_depolarized) -> list[MitigationRecord]
#   - mitigate_series(values, p_eff_trace, o_depolarized, stderrs) -> list[Estimate]
#   - depolarized_reference(kind, lattice) -> float
# --- /agent_meta ---

from __future__ import annotations

from typing import List, Literal, Optional, Sequence, Tuple, Union

from src.lattice import Lattice, mixed_state_mean_separation
from src.observables import Estimate
from src.utils import get_logger

from .errors import DegenerateReferenceError, FullDepolarizationError, MitigationError
from .models import MitigationRecord

_log = get_logger(__name__)

ReferenceKind = Literal["separation", "pauli", "excitation_probability"]


def global_depolarize(value: float, p: float, o_depolarized: float) -> float:
    """(1 − p)·value + p·O_depolarized."""
    return (1.0 - p) * value + p * o_depolarized


def effective_depol(measured: float, o_initial: float, o_depolarized: float) -> float:
    """(measured − O_initial) / (O_depolarized − O_initial) без обрезки."""
    denominator = o_depolarized - o_initial
    if abs(denominator) < 1e-15:
        raise DegenerateReferenceError(o_initial, o_depolarized)
    return (measured - o_initial) / denominator


def clamp_p_eff(raw: float) -> Tuple[float, bool]:
    if 0.0 <= raw <= 1.0:
        return raw, False
    clamped = min(1.0, max(0.0, raw))
    _log.warning("p_eff=%.4f вне [0, 1], обрезано до %.1f", raw, clamped)
    return clamped, True


def rescale(measured: float, p_eff: float, o_depolarized: float) -> float:
    """(measured − p_eff·O_depolarized) / (1 − p_eff)."""
    if p_eff >= 1.0:
        raise FullDepolarizationError(p_eff)
    return (measured - p_eff * o_depolarized) / (1.0 - p_eff)


def calibrate(
    times: Sequence[float],
    measured: Sequence[float],
    o_initial: float,
    o_depolarized: float,
    source: Literal["stationary", "loschmidt", "synthetic"] = "stationary",
) -> List[MitigationRecord]:
    """p_eff по каждой временной точке из стационарной опорной наблюдаемой."""
    if len(times) != len(measured):
        raise MitigationError(f"calibration grid mismatch: {len(times)} times vs {len(measured)} values")
    records = []
    for t, value in zip(times, measured):
        raw = effective_depol(value, o_initial, o_depolarized)
        p, flagged = clamp_p_eff(raw)
        records.append(
            MitigationRecord(
                t=t, p_eff=p, raw_p_eff=raw, o_initial=o_initial,
                o_depolarized=o_depolarized, source=source, flagged=flagged,
            )
        )
    return records


def mitigate_series(
    values: Sequence[float],
    p_eff_trace: Sequence[Union[float, MitigationRecord]],
    o_depolarized: float,
    stderrs: Optional[Sequence[float]] = None,
) -> List[Estimate]:
    """Поточечное перемасштабирование ряда; ошибка делится на (1 − p_eff)."""
    if len(values) != len(p_eff_trace):
        raise MitigationError(f"series length {len(values)} differs from p_eff trace {len(p_eff_trace)}")
    stderrs = stderrs if stderrs is not None else [0.0] * len(values)
    out = []
    for value, err, p in zip(values, stderrs, p_eff_trace):
        p_eff = p.p_eff if isinstance(p, MitigationRecord) else float(p)
        out.append(Estimate(rescale(value, p_eff, o_depolarized), err / (1.0 - p_eff)))
    return out


def depolarized_reference(kind: ReferenceKind, lattice: Optional[Lattice] = None) -> float:
    """Значение наблюдаемой в максимально смешанном состоянии."""
    if kind == "separation":
        if lattice is None:
            raise MitigationError("separation reference needs the lattice")
        return float(mixed_state_mean_separation(lattice.lx, lattice.ly))
    if kind == "pauli":
        return 0.0
    if kind == "excitation_probability":
        return 0.5
    raise MitigationError(f"unknown reference kind '{kind}'")
