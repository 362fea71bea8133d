# src/observables/__init__.py
# --- agent_meta ---
# role: observables
# owner: @backend
# contract: Измеряемые величины: заряды, расстояния, карты, двухвременные корреляторы, S_ZZ, X-струна
# last_reviewed: 2026-10-14
# interfaces:
#   - vertex_parities, mean_separation, excitation_heatmap, z_field_map, conditional_map
#   - two_time_zz, string_correlator, s_zz
#   - exact_* версии без выборки
# --- /agent_meta ---

from .charges import (
    conditional_map,
    exact_charge_distribution,
    exact_conditional_map,
    exact_excitation_distance,
    exact_excitation_probability,
    exact_heatmap,
    exact_mean_separation,
    distribution_mean_separation,
    exact_z_map,
    excitation_distance,
    excitation_heatmap,
    excitation_probability,
    mean_separation,
    sector_histogram,
    sector_sizes,
    vertex_parities,
    vertex_parity_matrix,
    z_field_map,
)
from .correlators import (
    DEFAULT_ANGLES,
    hadamard_circuit,
    parity_estimate,
    s_zz,
    string_correlator,
    two_time_correlator,
    two_time_zz,
)
from .errors import (
    EmptyTableError,
    GridMismatchError,
    LengthMismatchError,
    LinkOutOfRangeError,
    ObservableError,
    SectorMismatchError,
    UnknownMethodError,
)
from .models import ChargeRecord, ConditionalMap, CorrelatorSeries, Estimate

__all__ = [
    "ChargeRecord",
    "ConditionalMap",
    "CorrelatorSeries",
    "Estimate",
    "vertex_parity_matrix",
    "vertex_parities",
    "sector_sizes",
    "sector_histogram",
    "mean_separation",
    "excitation_heatmap",
    "z_field_map",
    "excitation_probability",
    "conditional_map",
    "excitation_distance",
    "exact_charge_distribution",
    "exact_mean_separation",
    "distribution_mean_separation",
    "exact_heatmap",
    "exact_z_map",
    "exact_excitation_probability",
    "exact_conditional_map",
    "exact_excitation_distance",
    "two_time_correlator",
    "two_time_zz",
    "string_correlator",
    "s_zz",
    "hadamard_circuit",
    "parity_estimate",
    "DEFAULT_ANGLES",
    "ObservableError",
    "EmptyTableError",
    "LengthMismatchError",
    "SectorMismatchError",
    "GridMismatchError",
    "UnknownMethodError",
    "LinkOutOfRangeError",
]
