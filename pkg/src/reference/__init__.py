# src/reference/__init__.py
# --- agent_meta ---
# role: reference
# owner: @backend
# contract: Точный оракул: гамильтониан, основное состояние, точная эволюция, метрики качества
# last_reviewed: 2026-10-13
# interfaces:
#   - build_hamiltonian, ground_state, exact_evolve, evolve_series, energy
#   - wala_quality, trotter_error_scan
# --- /agent_meta ---

from .config import SolverSettings, get_solver_settings
from .errors import InvalidTimeError, SolverConvergenceError, SolverError
from .hamiltonian import SparseHamiltonian, build_hamiltonian
from .models import TrotterErrorPoint, TrotterErrorScan, WalaQuality
from .quality import trotter_error_scan, wala_quality, wala_state
from .solver import energy, evolve_series, exact_evolve, ground_state

__all__ = [
    "SolverSettings",
    "get_solver_settings",
    "SparseHamiltonian",
    "build_hamiltonian",
    "ground_state",
    "exact_evolve",
    "evolve_series",
    "energy",
    "wala_quality",
    "wala_state",
    "trotter_error_scan",
    "WalaQuality",
    "TrotterErrorPoint",
    "TrotterErrorScan",
    "SolverError",
    "SolverConvergenceError",
    "InvalidTimeError",
]
