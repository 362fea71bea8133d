# src/reference/hamiltonian.py
# --- agent_meta ---
# role: reference-hamiltonian
# owner: @backend
# contract: Разреженный гамильтониан Z2-теории как список членов Паули и его CSR-матрица
# last_reviewed: 2026-10-13
# interfaces:
#   - SparseHamiltonian (terms, to_sparse, to_dense, term_count)
#   - build_hamiltonian(lattice, params, field_mask) -> SparseHamiltonian
# --- /agent_meta ---

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sparse

from src.circuits import HamiltonianParams, resolve_field_mask
from src.lattice import Lattice
from src.state_engine import PauliString, StateVector, expectation
from src.utils import get_logger

_log = get_logger(__name__)

_PHASES = (1.0, 1j, -1.0, -1j)


@dataclass
class SparseHamiltonian:
    """H = Σ c_k·P_k с вещественными c_k; эрмитов по построению."""
    n_qubits: int
    terms: List[Tuple[float, PauliString]]
    labels: List[str] = field(default_factory=list)
    _matrix: Optional[sparse.csr_matrix] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def to_sparse(self) -> sparse.csr_matrix:
        """Члены группируются по X-маске: у каждой группы одна перестановка базиса."""
        if self._matrix is not None:
            return self._matrix
        idx = np.arange(self.dim, dtype=np.int64)
        groups: Dict[int, np.ndarray] = defaultdict(lambda: np.zeros(self.dim, dtype=complex))
        for coeff, pauli in self.terms:
            xmask, zmask, ny = pauli.masks()
            weight = np.full(self.dim, coeff * pauli.sign * _PHASES[ny % 4], dtype=complex)
            q, mask = 0, zmask
            while mask:
                if mask & 1:
                    weight *= 1 - 2 * ((idx >> q) & 1)
                mask >>= 1
                q += 1
            groups[xmask] += weight
        rows, cols, data = [], [], []
        for xmask, weight in groups.items():
            rows.append(idx ^ xmask)
            cols.append(idx)
            data.append(weight)
        matrix = sparse.csr_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(self.dim, self.dim),
        )
        if np.all(np.abs(matrix.data.imag) < 1e-15):
            matrix = matrix.real.tocsr()
        matrix.eliminate_zeros()
        self._matrix = matrix
        return matrix

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def term_energy(self, state: StateVector) -> float:
        """Σ c_k·<P_k> через движок состояния."""
        return float(sum(c * expectation(state, p) for c, p in self.terms))


def build_hamiltonian(
    lattice: Lattice,
    params: HamiltonianParams,
    field_mask: Optional[Sequence[int]] = None,
) -> SparseHamiltonian:
    """-Σ J_E·s_v·A_v - Σ J_M·B_p - Σ h_E·Z_l - Σ λ·X_l по немаскированным рёбрам.

    Полевые члены с нулевым коэффициентом не добавляются.
    """
    masked = set(resolve_field_mask(lattice, field_mask))
    terms: List[Tuple[float, PauliString]] = []
    labels: List[str] = []
    for v, support in enumerate(lattice.vertex_supports):
        vertex = lattice.vertex_of(v)
        terms.append((-params.j_e * params.sign_of(vertex), PauliString.z_on(support)))
        labels.append(f"A{vertex}")
    for p, support in enumerate(lattice.plaquette_supports):
        terms.append((-params.j_m, PauliString.x_on(support)))
        labels.append(f"B{lattice.plaquettes[p]}")
    for link in lattice.links:
        if link.id in masked:
            continue
        if params.h_e != 0.0:
            terms.append((-params.h_e, PauliString.z_on([link.id])))
            labels.append(f"Z{link.label}")
        if params.lam != 0.0:
            terms.append((-params.lam, PauliString.x_on([link.id])))
            labels.append(f"X{link.label}")
    _log.debug("Гамильтониан: %d членов на %d кубитах", len(terms), lattice.n_links)
    return SparseHamiltonian(lattice.n_links, terms, labels)
