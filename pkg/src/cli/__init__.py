# src/cli/__init__.py
# --- agent_meta ---
# role: cli-package
# owner: @backend
# contract: Пакет CLI исполнителя сценариев (lgt run / list / check)
# last_reviewed: 2026-10-16
# interfaces:
#   - python -m src.cli
# --- /agent_meta ---

__all__ = []
