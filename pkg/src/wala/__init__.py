# src/wala/__init__.py
# --- agent_meta ---
# role: wala
# owner: @backend
# contract: Классическая сторона WALA: энергия E(θ), оптимальный угол, термодинамический предел, аналитические средние
# last_reviewed: 2026-10-13
# interfaces:
#   - energy_theta, optimize_theta, theta_thermo, analytic_expectations
#   - WalaSolution, WalaExpectations
# --- /agent_meta ---

from .analytic import (
    analytic_expectations,
    energy_per_cell,
    energy_theta,
    optimize_theta,
    polarized_energy,
    scan_theta,
    theta_thermo,
    toric_energy,
)
from .errors import InvalidCouplingError, WalaError
from .models import WalaExpectations, WalaSolution

__all__ = [
    "analytic_expectations",
    "energy_per_cell",
    "energy_theta",
    "optimize_theta",
    "polarized_energy",
    "scan_theta",
    "theta_thermo",
    "toric_energy",
    "WalaExpectations",
    "WalaSolution",
    "WalaError",
    "InvalidCouplingError",
]
