# src/mitigation/__init__.py
# --- agent_meta ---
# role: mitigation
# owner: @backend
# contract: Постселекция, инверсия считывания, перемасштабирование глобальной деполяризации, эхо Лошмидта
# last_reviewed: 2026-10-14
# interfaces:
#   - postselect, invert_readout, effective_depol, rescale, loschmidt_p_eff, loschmidt_echo
#   - ReadoutModel, MitigationRecord, PostselectCriteria, LoschmidtResult
# --- /agent_meta ---

from .depolarizing import (
    calibrate,
    clamp_p_eff,
    depolarized_reference,
    effective_depol,
    global_depolarize,
    mitigate_series,
    rescale,
)
from .errors import (
    DegenerateReferenceError,
    FullDepolarizationError,
    MissingColumnError,
    MitigationError,
    QubitCountError,
)
from .loschmidt import echo_energy, loschmidt_echo, loschmidt_exact_energy, loschmidt_p_eff
from .models import LoschmidtResult, MitigationRecord, PostselectCriteria, ReadoutModel
from .postselect import postselect
from .readout import (
    clip_and_renormalize,
    distribution_from_shots,
    forward_readout,
    invert_readout,
    parity_expectation,
    readout_matrix,
)

__all__ = [
    "ReadoutModel",
    "PostselectCriteria",
    "MitigationRecord",
    "LoschmidtResult",
    "postselect",
    "readout_matrix",
    "forward_readout",
    "invert_readout",
    "distribution_from_shots",
    "parity_expectation",
    "clip_and_renormalize",
    "global_depolarize",
    "effective_depol",
    "clamp_p_eff",
    "rescale",
    "calibrate",
    "mitigate_series",
    "depolarized_reference",
    "loschmidt_exact_energy",
    "loschmidt_p_eff",
    "echo_energy",
    "loschmidt_echo",
    "MitigationError",
    "DegenerateReferenceError",
    "FullDepolarizationError",
    "MissingColumnError",
    "QubitCountError",
]
