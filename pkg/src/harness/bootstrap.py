# src/harness/bootstrap.py
# --- agent_meta ---
# role: harness-bootstrap
# owner: @backend
# contract: Регистрация встроенных сценариев: v1 с параметрами рисунков и small на решётке 2×3
# last_reviewed: 2026-10-16
# interfaces:
#   - register_builtin_scenarios(registry=None) -> ScenarioRegistry
# --- /agent_meta ---

from __future__ import annotations

from typing import Any, Dict, Optional

from .registry import ScenarioRegistry, get_global_registry
from .scenarios import BUILTIN_SCENARIOS

_SMALL = {"lx": 2, "ly": 3}
_SMALL_LEFT = {**_SMALL, "pinned_links": [{"side": "left", "row": 1, "col": 0}]}
_SMALL_BOTH = {
    **_SMALL,
    "pinned_links": [{"side": "left", "row": 1, "col": 0}, {"side": "right", "row": 1, "col": 1}],
}

# Переопределения версии small: 2×3 вершин, где геометрия это допускает
SMALL_OVERRIDES: Dict[str, Dict[str, Any]] = {
    "fig2_energy": {"lattice": _SMALL},
    "fig2_wala_terms": {"lattice": _SMALL, "extra": {"accounting_sizes": [2, 3]}},
    "wala_quality": {"lattice": _SMALL},
    "fig3_charges": {"lattice": _SMALL},
    # центральной вершине суперпозиции нужна внутренняя строка и столбец
    "fig3_superposition": {"lattice": {"lx": 3, "ly": 3}},
    "fig3_conditional": {"lattice": _SMALL},
    "s4_single_charge_quench": {"lattice": _SMALL_LEFT},
    "edfig4_depol_models": {"lattice": _SMALL},
    "fig4_string_szz": {"lattice": _SMALL_BOTH},
    "edfig9_aux_correlators": {"lattice": _SMALL},
    "s5_string_correlator": {"lattice": _SMALL_LEFT},
    "s6_lambda_zero_strings": {"lattice": _SMALL_BOTH},
    "fig5_breaking": {"lattice": _SMALL_BOTH},
    "fig5_resonance": {"lattice": _SMALL_BOTH},
    "trotter_error_scan": {"lattice": _SMALL_BOTH, "extra": {"robust_dts": []}},
    "loschmidt_calibration": {"lattice": _SMALL},
}


def register_builtin_scenarios(registry: Optional[ScenarioRegistry] = None) -> ScenarioRegistry:
    """Регистрирует все встроенные сценарии; v1 - версия по умолчанию."""
    registry = registry or get_global_registry()
    for scenario_class in BUILTIN_SCENARIOS:
        registry.register(scenario_class.name, scenario_class, "v1", set_as_default=True)
        registry.register(
            scenario_class.name,
            scenario_class,
            "small",
            default_config=SMALL_OVERRIDES.get(scenario_class.name, {}),
            description=f"{scenario_class.description} (small lattice)",
        )
    return registry
