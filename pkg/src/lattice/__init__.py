# src/lattice/__init__.py
# --- agent_meta ---
# role: lattice
# owner: @backend
# contract: Публичный API геометрии решётки: построение, расстояния, формулы подсчёта, пути струн
# last_reviewed: 2026-10-12
# interfaces:
#   - build_lattice(spec: LatticeSpec) -> Lattice
#   - manhattan_distance, entangling_count_per_cycle, mixed_state_mean_separation
#   - path_endpoints, default_superposition_paths, default_bump_path, bump_sites, pinned_row_string
# --- /agent_meta ---

from .builder import build_lattice
from .errors import InvalidLatticeError, InvalidPathError, LatticeError, PinnedLinkError, UnknownLinkError
from .geometry import (
    BumpSites,
    bump_sites,
    central_horizontal_link,
    central_vertex,
    default_bump_path,
    default_superposition_paths,
    entangling_count_per_cycle,
    manhattan_distance,
    mixed_state_mean_separation,
    path_endpoints,
    pinned_row_string,
)
from .models import ExtraLink, Lattice, LatticeSpec, Link, LinkKind, LinkRef, PathSpec, Side, VertexId

__all__ = [
    "build_lattice",
    "Lattice",
    "LatticeSpec",
    "ExtraLink",
    "Link",
    "LinkKind",
    "LinkRef",
    "PathSpec",
    "Side",
    "VertexId",
    "BumpSites",
    "bump_sites",
    "central_horizontal_link",
    "central_vertex",
    "default_bump_path",
    "default_superposition_paths",
    "entangling_count_per_cycle",
    "manhattan_distance",
    "mixed_state_mean_separation",
    "path_endpoints",
    "pinned_row_string",
    "LatticeError",
    "InvalidLatticeError",
    "InvalidPathError",
    "PinnedLinkError",
    "UnknownLinkError",
]
