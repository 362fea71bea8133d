# src/cli/app.py
# --- agent_meta ---
# role: cli-app
# owner: @backend
# contract: CLI исполнителя сценариев: прогон конфигурации в бандл, каталог, проверка бандла критериями
# last_reviewed: 2026-10-16
# interfaces:
#   - main(argv: list[str]) -> int
#   - Команды: run | list | check
#   - Коды выхода: 0 - успех, 1 - критерии не выполнены, 2 - ошибка конфигурации или прогона
# --- /agent_meta ---

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from pydantic import ValidationError

from src.harness import (
    HarnessError,
    check_bundle_path,
    list_scenarios,
    run_experiment,
)
from src.utils import get_logger, init_logging_from_env

_log = get_logger(__name__)


def _print_json(data: Any) -> None:
    print(json.dumps(data, ensure_ascii=False, indent=2))


def cmd_run(args: argparse.Namespace) -> int:
    outcome = run_experiment(args.config, seed=args.seed, out_dir=args.out, check=args.check)
    summary = {
        "bundle": str(outcome.bundle.path),
        "scenario": outcome.bundle.scenario,
        "tables": outcome.bundle.observables,
    }
    if outcome.report is not None:
        summary["check"] = outcome.report.summary()
    _print_json(summary)
    return 0 if outcome.passed else 1


def cmd_list(args: argparse.Namespace) -> int:
    catalog = [info.to_json() for info in list_scenarios()]
    if args.json:
        _print_json({"scenarios": catalog})
        return 0
    for item in catalog:
        marker = "*" if item["default"] else " "
        print(f"{marker} {item['name']}@{item['version']}: {item['description']}")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    report = check_bundle_path(args.bundle, args.criteria)
    _print_json(report.summary())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lgt", description="Z2 lattice gauge theory simulation harness")
    sp = p.add_subparsers(dest="cmd", required=True)

    p_run = sp.add_parser("run", help="Run a scenario config and write a result bundle")
    p_run.add_argument("--config", required=True, help="JSON/YAML experiment config or a bundle manifest")
    p_run.add_argument("--check", action="store_true", help="Evaluate the scenario's bundled criteria")
    p_run.add_argument("--seed", type=int, help="Override the master seed")
    p_run.add_argument("--out", help="Output directory; the bundle goes to <out>/<scenario>")
    p_run.set_defaults(handler=cmd_run)

    p_list = sp.add_parser("list", help="List registered scenarios")
    p_list.add_argument("--json", action="store_true")
    p_list.set_defaults(handler=cmd_list)

    p_check = sp.add_parser("check", help="Check a bundle against criteria")
    p_check.add_argument("bundle", help="Bundle directory (or its manifest.json)")
    p_check.add_argument("criteria", nargs="?", help="YAML/JSON criteria file; defaults to the scenario's own")
    p_check.set_defaults(handler=cmd_check)
    return p


def main(argv: list[str]) -> int:
    init_logging_from_env()
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = getattr(args, "handler", None)
    if handler is None:
        parser.print_help()
        return 2
    try:
        return int(handler(args))
    except (HarnessError, ValidationError) as e:
        _log.error("Команда %s завершилась ошибкой: %s", args.cmd, e)
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
