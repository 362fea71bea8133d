# src/harness/scenarios/__init__.py
# --- agent_meta ---
# role: harness-scenarios
# owner: @backend
# contract: Встроенные сценарии, воспроизводящие данные рисунков на настольном масштабе
# last_reviewed: 2026-10-16
# interfaces:
#   - BUILTIN_SCENARIOS
# --- /agent_meta ---

from .breaking import Fig5BreakingScenario, Fig5ResonanceScenario
from .calibration import LoschmidtCalibrationScenario, TrotterErrorScenario
from .charges import (
    DepolModelsScenario,
    Fig3ChargesScenario,
    Fig3ConditionalScenario,
    Fig3SuperpositionScenario,
    SingleChargeQuenchScenario,
)
from .energy import Fig2EnergyScenario, Fig2WalaTermsScenario, WalaQualityScenario
from .strings import (
    AuxCorrelatorsScenario,
    Fig4StringSzzScenario,
    LambdaZeroStringsScenario,
    StringCorrelatorScenario,
)

BUILTIN_SCENARIOS = (
    Fig2EnergyScenario,
    Fig2WalaTermsScenario,
    Fig3ChargesScenario,
    Fig3SuperpositionScenario,
    Fig3ConditionalScenario,
    Fig4StringSzzScenario,
    Fig5BreakingScenario,
    Fig5ResonanceScenario,
    DepolModelsScenario,
    AuxCorrelatorsScenario,
    SingleChargeQuenchScenario,
    StringCorrelatorScenario,
    LambdaZeroStringsScenario,
    TrotterErrorScenario,
    LoschmidtCalibrationScenario,
    WalaQualityScenario,
)

__all__ = [
    "BUILTIN_SCENARIOS",
    "Fig2EnergyScenario",
    "Fig2WalaTermsScenario",
    "WalaQualityScenario",
    "Fig3ChargesScenario",
    "Fig3SuperpositionScenario",
    "Fig3ConditionalScenario",
    "SingleChargeQuenchScenario",
    "DepolModelsScenario",
    "Fig4StringSzzScenario",
    "AuxCorrelatorsScenario",
    "StringCorrelatorScenario",
    "LambdaZeroStringsScenario",
    "Fig5BreakingScenario",
    "Fig5ResonanceScenario",
    "TrotterErrorScenario",
    "LoschmidtCalibrationScenario",
]
