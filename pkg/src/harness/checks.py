# src/harness/checks.py
# --- agent_meta ---
# role: harness-checks
# owner: @backend
# contract: Машиночитаемые критерии приёмки по таблицам бандла; отчёт с запасом по каждому критерию
# last_reviewed: 2026-10-15
# interfaces:
#   - Criterion
#   - load_criteria(path) -> list[Criterion]
#   - evaluate(bundle, criterion) -> CheckResult
#   - check_bundle(bundle, criteria) -> CheckReport
# --- /agent_meta ---

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.utils import get_logger

from .bundle import ResultBundle, verify_integrity
from .config import read_structured
from .errors import CriterionError, MissingObservableError
from .models import CheckReport, CheckResult, ResultRow

_log = get_logger(__name__)

CriterionKind = Literal[
    "abs_le", "between", "less_than_series", "argmax_within",
    "non_decreasing", "no_interior_peak", "series_agree", "integrity",
]


class Criterion(BaseModel):
    """Критерий приёмки.

    where/other - фильтры по столбцам (значение или список допустимых значений);
    key - столбец, по которому сопоставляются ряды или ищется максимум.
    """
    model_config = ConfigDict(extra="forbid")

    name: str
    kind: CriterionKind
    observable: Optional[str] = None
    where: Dict[str, Any] = Field(default_factory=dict)
    other: Dict[str, Any] = Field(default_factory=dict)
    key: str = "t"
    key_min: Optional[float] = None
    key_max: Optional[float] = None
    target: float = 0.0
    tol: float = Field(default=0.0, ge=0.0)
    low: Optional[float] = None
    high: Optional[float] = None
    sigma: float = Field(default=0.0, ge=0.0, description="Допуск в единицах stderr для non_decreasing")
    interior: bool = Field(default=False, description="argmax не на краю сетки")
    factor: float = Field(default=1.0, gt=0.0, description="Множитель опорной величины для no_interior_peak и series_agree")


def load_criteria(path: Union[str, Path]) -> List[Criterion]:
    """Список критериев из YAML/JSON: либо список, либо {'criteria': [...]}."""
    data = read_structured(path)
    items = data.get("criteria", []) if isinstance(data, dict) else data
    try:
        return [Criterion.model_validate(item) for item in items or []]
    except ValidationError as e:
        raise CriterionError(str(path), str(e)) from e


def _matches(row: ResultRow, filters: Dict[str, Any]) -> bool:
    for column, expected in filters.items():
        actual = getattr(row, column)
        options = expected if isinstance(expected, (list, tuple)) else [expected]
        if isinstance(actual, float):
            if not any(math.isclose(actual, float(o), rel_tol=0.0, abs_tol=1e-9) for o in options):
                return False
        elif str(actual) not in [str(o) for o in options]:
            return False
    return True


def _key_of(row: ResultRow, c: Criterion) -> Union[float, str]:
    value = getattr(row, c.key)
    return round(float(value), 9) if isinstance(value, (int, float)) else str(value)


def _in_range(value: Union[float, str], c: Criterion) -> bool:
    if isinstance(value, str):
        return True
    if c.key_min is not None and value < c.key_min - 1e-12:
        return False
    if c.key_max is not None and value > c.key_max + 1e-12:
        return False
    return True


def _select(bundle: ResultBundle, c: Criterion, filters: Dict[str, Any]) -> List[ResultRow]:
    if c.observable is None:
        raise CriterionError(c.name, "observable is required")
    try:
        rows = bundle.rows(c.observable)
    except ValidationError as e:
        raise CriterionError(c.name, f"table '{c.observable}' does not parse: {e}") from e
    selected = [r for r in rows if _matches(r, filters) and _in_range(_key_of(r, c), c)]
    if not selected:
        raise MissingObservableError(c.observable, c.name)
    return selected


def _where(row: ResultRow) -> str:
    return f"variant={row.variant} h_e={row.h_e:g} lam={row.lam:g} site={row.site} t={row.t:g}"


def _abs_le(bundle: ResultBundle, c: Criterion) -> CheckResult:
    rows = _select(bundle, c, c.where)
    worst = max(rows, key=lambda r: abs(r.value - c.target))
    margin = c.tol - abs(worst.value - c.target)
    return CheckResult(
        name=c.name, kind=c.kind, passed=margin >= 0, margin=margin,
        detail=f"max |value - {c.target:g}| = {abs(worst.value - c.target):.3e} at {_where(worst)}",
    )


def _between(bundle: ResultBundle, c: Criterion) -> CheckResult:
    if c.low is None and c.high is None:
        raise CriterionError(c.name, "between needs low and/or high")
    rows = _select(bundle, c, c.where)

    def slack(r: ResultRow) -> float:
        lo = r.value - c.low if c.low is not None else math.inf
        hi = c.high - r.value if c.high is not None else math.inf
        return min(lo, hi)

    worst = min(rows, key=slack)
    margin = slack(worst)
    return CheckResult(
        name=c.name, kind=c.kind, passed=margin >= 0, margin=margin,
        detail=f"tightest value {worst.value:.6g} at {_where(worst)}",
    )


def _series(rows: Sequence[ResultRow], c: Criterion) -> Dict[Union[float, str], ResultRow]:
    out: Dict[Union[float, str], ResultRow] = {}
    for r in rows:
        k = _key_of(r, c)
        if k in out:
            raise CriterionError(c.name, f"several rows share {c.key}={k}; narrow the filters")
        out[k] = r
    return out


def _less_than_series(bundle: ResultBundle, c: Criterion) -> CheckResult:
    left = _series(_select(bundle, c, c.where), c)
    right = _series(_select(bundle, c, c.other), c)
    common = sorted(set(left) & set(right))
    if not common:
        raise CriterionError(c.name, f"series share no {c.key} values")
    gaps = {k: right[k].value + c.tol - left[k].value for k in common}
    k_worst = min(gaps, key=gaps.get)
    margin = gaps[k_worst]
    return CheckResult(
        name=c.name, kind=c.kind, passed=margin > 0, margin=margin,
        detail=f"{len(common)} points; closest at {c.key}={k_worst}: {left[k_worst].value:.6g} vs {right[k_worst].value:.6g}",
    )


def _argmax_within(bundle: ResultBundle, c: Criterion) -> CheckResult:
    if c.low is None or c.high is None:
        raise CriterionError(c.name, "argmax_within needs low and high")
    series = _series(_select(bundle, c, c.where), c)
    if any(isinstance(k, str) for k in series):
        raise CriterionError(c.name, f"argmax_within needs a numeric key, got {c.key}")
    xs = sorted(series)
    x_star = max(xs, key=lambda x: series[x].value)
    margin = min(x_star - c.low, c.high - x_star)
    passed = margin >= 0
    detail = f"argmax {c.key}={x_star:g} (value {series[x_star].value:.6g}) over {len(xs)} points"
    if c.interior and x_star in (xs[0], xs[-1]):
        passed = False
        detail += "; maximum sits on the grid edge"
    return CheckResult(name=c.name, kind=c.kind, passed=passed, margin=margin, detail=detail)


def _non_decreasing(bundle: ResultBundle, c: Criterion) -> CheckResult:
    series = _series(_select(bundle, c, c.where), c)
    xs = sorted(series)
    if len(xs) < 2:
        raise CriterionError(c.name, "non_decreasing needs at least two points")
    margin, at = math.inf, xs[0]
    for a, b in zip(xs, xs[1:]):
        ra, rb = series[a], series[b]
        slack = rb.value - ra.value + c.sigma * math.hypot(ra.stderr, rb.stderr) + c.tol
        if slack < margin:
            margin, at = slack, b
    return CheckResult(
        name=c.name, kind=c.kind, passed=margin >= 0, margin=margin,
        detail=f"{len(xs)} points; tightest step ends at {c.key}={at}",
    )


def _numeric_series(bundle: ResultBundle, c: Criterion, filters: Dict[str, Any]) -> Dict[float, ResultRow]:
    series = _series(_select(bundle, c, filters), c)
    if any(isinstance(k, str) for k in series):
        raise CriterionError(c.name, f"{c.kind} needs a numeric key, got {c.key}")
    return series


def _prominence(series: Dict[float, ResultRow], c: Criterion) -> float:
    """Высота внутреннего максимума над большим из краевых значений."""
    xs = sorted(series)
    if len(xs) < 3:
        raise CriterionError(c.name, "no_interior_peak needs at least three points")
    edge = max(series[xs[0]].value, series[xs[-1]].value)
    return max(series[x].value for x in xs[1:-1]) - edge


def _no_interior_peak(bundle: ResultBundle, c: Criterion) -> CheckResult:
    """Внутренний пик не выше tol (+ factor * пик ряда other, если other задан)."""
    prominence = _prominence(_numeric_series(bundle, c, c.where), c)
    bound = c.tol
    detail = f"interior excess {prominence:.6g}"
    if c.other:
        reference = _prominence(_numeric_series(bundle, c, c.other), c)
        bound += c.factor * max(reference, 0.0)
        detail += f" vs reference peak {reference:.6g}"
    margin = bound - prominence
    return CheckResult(name=c.name, kind=c.kind, passed=margin >= 0, margin=margin, detail=detail)


def _series_agree(bundle: ResultBundle, c: Criterion) -> CheckResult:
    """max |L - R| по общим ключам не больше factor * наибольшего размаха рядов + tol."""
    left = _series(_select(bundle, c, c.where), c)
    right = _series(_select(bundle, c, c.other), c)
    common = sorted(set(left) & set(right), key=str)
    if not common:
        raise CriterionError(c.name, f"series share no {c.key} values")
    spread = max(
        max(s[k].value for k in common) - min(s[k].value for k in common) for s in (left, right)
    )
    k_worst = max(common, key=lambda k: abs(left[k].value - right[k].value))
    gap = abs(left[k_worst].value - right[k_worst].value)
    margin = c.factor * spread + c.tol - gap
    return CheckResult(
        name=c.name, kind=c.kind, passed=margin >= 0, margin=margin,
        detail=f"{len(common)} points; spread {spread:.6g}; widest gap {gap:.6g} at {c.key}={k_worst}",
    )


def _integrity(bundle: ResultBundle, c: Criterion) -> CheckResult:
    problems = verify_integrity(bundle)
    return CheckResult(
        name=c.name, kind=c.kind, passed=not problems, margin=-float(len(problems)) if problems else 0.0,
        detail="; ".join(problems) if problems else "all digests match",
    )


_EVALUATORS: Dict[str, Callable[[ResultBundle, Criterion], CheckResult]] = {
    "abs_le": _abs_le,
    "between": _between,
    "less_than_series": _less_than_series,
    "argmax_within": _argmax_within,
    "non_decreasing": _non_decreasing,
    "no_interior_peak": _no_interior_peak,
    "series_agree": _series_agree,
    "integrity": _integrity,
}


def evaluate(bundle: ResultBundle, criterion: Criterion) -> CheckResult:
    return _EVALUATORS[criterion.kind](bundle, criterion)


def check_bundle(bundle: ResultBundle, criteria: Sequence[Union[Criterion, Dict[str, Any]]]) -> CheckReport:
    """Оценивает все критерии; отсутствующая наблюдаемая пробрасывается как MissingObservableError."""
    report = CheckReport(bundle=str(bundle.path))
    for item in criteria:
        criterion = item if isinstance(item, Criterion) else Criterion.model_validate(item)
        result = evaluate(bundle, criterion)
        level = _log.info if result.passed else _log.warning
        level("Критерий %s: %s, запас %.3e", result.name, "OK" if result.passed else "FAIL", result.margin)
        report.results.append(result)
    return report
