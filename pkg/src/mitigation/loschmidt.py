# src/mitigation/loschmidt.py
# --- agent_meta ---
# role: mitigation-loschmidt
# owner: @backend
# contract: Калибровка p_eff эхом Лошмидта U†U: энергия после эха в Z- и X-базисах против точного значения
# last_reviewed: 2026-10-14
# interfaces:
#   - loschmidt_exact_energy(lattice, params, field_mask) -> float
#   - loschmidt_p_eff(e_measured, e_exact) -> float
#   - echo_energy(z_shots, x_shots, lattice, params, field_mask) -> Estimate
#   - loschmidt_echo(lattice, params, circuit, model, ...) -> LoschmidtResult
# --- /agent_meta ---

from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple

import numpy as np

from src.circuits import Circuit, CircuitBuilder, HamiltonianParams, resolve_field_mask
from src.lattice import Lattice
from src.noise import NoiseModel, run_trajectories
from src.observables import Estimate
from src.state_engine import ShotTable, init_zero
from src.utils import get_logger

from .errors import DegenerateReferenceError
from .models import LoschmidtResult, PostselectCriteria
from .postselect import postselect

_log = get_logger(__name__)


def loschmidt_exact_energy(
    lattice: Lattice,
    params: HamiltonianParams,
    field_mask: Optional[Sequence[int]] = None,
) -> float:
    """Сумма всех членов H на идеальном эхе: −(λ + h_E)·N − J_E·Σ s_v − J_M·N_p.

    N - число рёбер без маски полей.
    """
    n_fields = lattice.n_links - len(resolve_field_mask(lattice, field_mask))
    vertex_sum = sum(params.sign_of(lattice.vertex_of(v)) for v in range(lattice.n_vertices))
    return -(params.lam + params.h_e) * n_fields - params.j_e * vertex_sum - params.j_m * lattice.n_plaquettes


def _loschmidt(e_measured: float, e_exact: float) -> Tuple[float, float, bool]:
    if e_exact == 0.0:
        raise DegenerateReferenceError(e_exact, e_measured)
    p_loschmidt = 1.0 - e_measured / e_exact
    if p_loschmidt < 0.0:
        _log.warning("E_measured/E_exact = %.4f > 1: p_Loschmidt обрезано до 0", e_measured / e_exact)
        return p_loschmidt, 0.0, True
    if p_loschmidt > 1.0:
        _log.warning("p_Loschmidt = %.4f > 1: обрезано до 1", p_loschmidt)
        return p_loschmidt, 1.0, True
    return p_loschmidt, math.sqrt(p_loschmidt), False


def loschmidt_p_eff(e_measured: float, e_exact: float) -> float:
    """√(1 − E_measured/E_exact); эхо проходит схему дважды, отсюда корень."""
    return _loschmidt(e_measured, e_exact)[1]


def _support_parities(bits: np.ndarray, supports: Sequence[Sequence[int]]) -> np.ndarray:
    return np.stack([1 - 2 * (bits[:, list(s)].sum(axis=1) % 2) for s in supports], axis=1).astype(float)


def _mean_err(samples: np.ndarray) -> Tuple[float, float]:
    n = samples.shape[0]
    return float(np.mean(samples)), (float(np.std(samples, ddof=1) / np.sqrt(n)) if n > 1 else 0.0)


def echo_energy(
    z_shots: ShotTable,
    x_shots: ShotTable,
    lattice: Lattice,
    params: HamiltonianParams,
    field_mask: Optional[Sequence[int]] = None,
) -> Estimate:
    """Z-прогон даёт Z_l и A_v, X-прогон (биты после H) даёт X_l и B_p."""
    masked = set(resolve_field_mask(lattice, field_mask))
    fields = [l for l in range(lattice.n_links) if l not in masked]
    signs = np.array([params.sign_of(lattice.vertex_of(v)) for v in range(lattice.n_vertices)], dtype=float)

    zb = z_shots.link_bits[:, : lattice.n_links]
    z_part = (
        -params.h_e * (1.0 - 2.0 * zb[:, fields]).sum(axis=1)
        - params.j_e * _support_parities(zb, lattice.vertex_supports) @ signs
    )
    xb = x_shots.link_bits[:, : lattice.n_links]
    x_part = (
        -params.lam * (1.0 - 2.0 * xb[:, fields]).sum(axis=1)
        - params.j_m * _support_parities(xb, lattice.plaquette_supports).sum(axis=1)
    )
    (z_mean, z_err), (x_mean, x_err) = _mean_err(z_part), _mean_err(x_part)
    return Estimate(z_mean + x_mean, math.hypot(z_err, x_err))


def _hadamard_layer(n_links: int, n_qubits: int) -> Circuit:
    return CircuitBuilder().add_many("h", range(n_links)).build(n_qubits, name="h_layer")


def loschmidt_echo(
    lattice: Lattice,
    params: HamiltonianParams,
    circuit: Circuit,
    model: NoiseModel,
    n_traj: Optional[int] = None,
    shots_per_traj: Optional[int] = None,
    *,
    field_mask: Optional[Sequence[int]] = None,
    max_workers: Optional[int] = None,
) -> LoschmidtResult:
    """Прогоняет U·U† на |0…0> (Z-базис) и на |+…+> (X-базис) с шумом, оценивает p_eff.

    Выстрелы с возбуждёнными анциллами отбрасываются.
    """
    n_links = lattice.n_links
    echo = circuit.compose(circuit.inverse())
    hadamards = _hadamard_layer(n_links, echo.n_qubits)
    x_echo = hadamards.compose(echo).compose(hadamards)
    psi0 = init_zero(n_links)
    criteria = PostselectCriteria(ancilla_zero=True)

    z_shots = postselect(run_trajectories(echo, psi0, model, n_traj, shots_per_traj, max_workers=max_workers), criteria)
    x_model = model.model_copy(update={"master_seed": model.master_seed + 1})
    x_shots = postselect(run_trajectories(x_echo, psi0, x_model, n_traj, shots_per_traj, max_workers=max_workers), criteria)

    e_exact = loschmidt_exact_energy(lattice, params, field_mask)
    measured = echo_energy(z_shots, x_shots, lattice, params, field_mask)
    p_loschmidt, p_eff, flagged = _loschmidt(measured.value, e_exact)
    _log.info(
        "Эхо Лошмидта %s: E=%.4f из %.4f, p_L=%.4f, p_eff=%.4f",
        circuit.name, measured.value, e_exact, p_loschmidt, p_eff,
    )
    return LoschmidtResult(
        e_exact=e_exact,
        e_measured=measured.value,
        e_measured_err=measured.stderr,
        p_loschmidt=p_loschmidt,
        p_eff=p_eff,
        flagged=flagged,
        retention=0.5 * (z_shots.retention + x_shots.retention),
    )
