# src/harness/bundle.py
# --- agent_meta ---
# role: harness-bundle
# owner: @backend
# contract: Бандл результатов: CSV на наблюдаемую с фиксированными столбцами и manifest.json с дайджестами sha256
# last_reviewed: 2026-10-15
# interfaces:
#   - ResultBundle (observables, records, rows)
#   - write_bundle(path, result, code_version) -> ResultBundle
#   - load_bundle(path) -> ResultBundle
#   - verify_integrity(bundle) -> list[str]
#   - row_digest(record) -> str
# --- /agent_meta ---

from __future__ import annotations

import csv
import hashlib
import io
import json
from collections import OrderedDict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Union

from src.utils import get_logger

from .errors import BundleError
from .models import CSV_COLUMNS, ResultRow, ScenarioResult

_log = get_logger(__name__)

MANIFEST_NAME = "manifest.json"


def row_digest(record: Dict[str, str]) -> str:
    payload = "\x1f".join(record.get(c) or "" for c in CSV_COLUMNS)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _table_file(observable: str) -> str:
    safe = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in observable)
    return f"{safe}.csv"


def _render_csv(records: List[Dict[str, str]]) -> bytes:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(CSV_COLUMNS), lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)
    return buffer.getvalue().encode("utf-8")


@dataclass
class ResultBundle:
    """Каталог бандла: сырые строковые записи таблиц и манифест."""
    path: Path
    manifest: Dict[str, Any]
    tables: Dict[str, List[Dict[str, str]]] = field(default_factory=dict)

    @property
    def observables(self) -> List[str]:
        return list(self.tables)

    @property
    def scenario(self) -> str:
        return str(self.manifest.get("scenario", ""))

    def records(self, observable: str) -> List[Dict[str, str]]:
        return self.tables.get(observable, [])

    def rows(self, observable: str) -> List[ResultRow]:
        return [ResultRow.from_csv(r) for r in self.records(observable)]


def _aggregate(result: ScenarioResult) -> Dict[str, Any]:
    retention: List[Dict[str, Any]] = []
    p_eff: List[Dict[str, Any]] = []
    for job in result.jobs:
        for item in job.get("retention", []):
            retention.append({"job": job["key"], **item})
        for item in job.get("p_eff", []):
            p_eff.append({"job": job["key"], **item})
    return {"retention": retention, "p_eff_trace": p_eff}


def write_bundle(path: Union[str, Path], result: ScenarioResult, code_version: str) -> ResultBundle:
    """Пишет CSV по наблюдаемым (в порядке первого появления) и манифест.

    Порядок строк внутри таблицы совпадает с порядком заданий по ключу,
    поэтому при равных сидах CSV побайтно совпадают.
    """
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)

    grouped: "OrderedDict[str, List[Dict[str, str]]]" = OrderedDict()
    for row in result.rows:
        grouped.setdefault(row.observable, []).append(row.to_csv())

    tables_meta: Dict[str, Any] = {}
    for observable, records in grouped.items():
        name = _table_file(observable)
        data = _render_csv(records)
        (path / name).write_bytes(data)
        tables_meta[observable] = {
            "file": name,
            "rows": len(records),
            "sha256": hashlib.sha256(data).hexdigest(),
            "row_sha256": [row_digest(r) for r in records],
        }

    manifest = {
        "scenario": result.scenario,
        "version": result.version,
        "code_version": code_version,
        "seed": result.config.get("seed"),
        "config": result.config,
        "runtime_seconds": result.runtime_seconds,
        "jobs": [{"key": j["key"], "runtime_seconds": j["runtime_seconds"]} for j in result.jobs],
        **_aggregate(result),
        "tables": tables_meta,
    }
    (path / MANIFEST_NAME).write_text(json.dumps(manifest, ensure_ascii=False, indent=2), encoding="utf-8")
    _log.info("Бандл записан: %s (%d таблиц, %d строк)", path, len(grouped), len(result.rows))
    return ResultBundle(path=path, manifest=manifest, tables=dict(grouped))


def _read_records(file: Path) -> List[Dict[str, str]]:
    with file.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise BundleError(str(file), f"unexpected columns {reader.fieldnames}")
        return [dict(r) for r in reader]


def load_bundle(path: Union[str, Path]) -> ResultBundle:
    path = Path(path)
    manifest_file = path / MANIFEST_NAME
    if not manifest_file.is_file():
        raise BundleError(str(path), "manifest.json is missing")
    try:
        manifest = json.loads(manifest_file.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise BundleError(str(path), f"manifest is not valid JSON: {e}") from e

    tables: Dict[str, List[Dict[str, str]]] = {}
    for observable, meta in manifest.get("tables", {}).items():
        file = path / meta["file"]
        if not file.is_file():
            raise BundleError(str(path), f"table {meta['file']} is missing")
        tables[observable] = _read_records(file)
    return ResultBundle(path=path, manifest=manifest, tables=tables)


def verify_integrity(bundle: ResultBundle) -> List[str]:
    """Сверяет файлы и строки с дайджестами манифеста; возвращает найденные расхождения."""
    problems: List[str] = []
    for observable, meta in bundle.manifest.get("tables", {}).items():
        file = bundle.path / meta["file"]
        if not file.is_file():
            problems.append(f"{meta['file']}: missing")
            continue
        if hashlib.sha256(file.read_bytes()).hexdigest() == meta["sha256"]:
            continue
        records = bundle.records(observable)
        expected = meta.get("row_sha256", [])
        if len(records) != len(expected):
            problems.append(f"{meta['file']}: {len(records)} rows, manifest lists {len(expected)}")
        located = False
        for i, (record, digest) in enumerate(zip(records, expected)):
            if row_digest(record) != digest:
                located = True
                fields = ", ".join(f"{c}={record[c]}" for c in ("observable", "variant", "site", "t", "value"))
                problems.append(f"{meta['file']}: row {i + 1} differs ({fields})")
        if not located and len(records) == len(expected):
            problems.append(f"{meta['file']}: file digest differs (header or formatting)")
    return problems
