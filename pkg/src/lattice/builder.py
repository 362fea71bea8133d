# src/lattice/builder.py
# --- agent_meta ---
# role: lattice-builder
# owner: @backend
# contract: Построение решётки из LatticeSpec с детерминированным порядком индексов рёбер
# last_reviewed: 2026-10-12
# interfaces:
#   - build_lattice(spec: LatticeSpec) -> Lattice
# --- /agent_meta ---

from __future__ import annotations

from typing import Dict, List, Tuple

from src.utils import get_logger

from .errors import InvalidLatticeError, PinnedLinkError
from .models import ExtraLink, Lattice, LatticeSpec, Link, LinkKind, Side

_log = get_logger(__name__)


def _check_pinned(extra: ExtraLink, lx: int, ly: int) -> None:
    r, c = extra.row, extra.col
    if not (0 <= r < ly and 0 <= c < lx):
        raise PinnedLinkError(extra.side.value, r, c, reason="vertex outside lattice")
    on_side = {
        Side.LEFT: c == 0,
        Side.RIGHT: c == lx - 1,
        Side.BOTTOM: r == 0,
        Side.TOP: r == ly - 1,
    }[extra.side]
    if not on_side:
        raise PinnedLinkError(extra.side.value, r, c)


def build_lattice(spec: LatticeSpec) -> Lattice:
    """Строит решётку: рёбра, опоры вершинных и плакеточных операторов."""
    lx, ly = spec.lx, spec.ly
    if lx < 2 or ly < 2:
        raise InvalidLatticeError(lx, ly)

    links: List[Link] = []
    index: Dict[Tuple[str, int, int], int] = {}

    def add(kind: LinkKind, row: int, col: int, side: Side = None) -> None:
        link = Link(id=len(links), kind=kind, row=row, col=col, side=side)
        key = kind.value if side is None else f"{kind.value}-{side.value}"
        if (key, row, col) in index:
            raise PinnedLinkError(side.value, row, col, reason="duplicate pinned link")
        index[(key, row, col)] = link.id
        links.append(link)

    for r in range(ly):
        for c in range(lx - 1):
            add(LinkKind.H, r, c)
        if r < ly - 1:
            for c in range(lx):
                add(LinkKind.V, r, c)

    for extra in spec.pinned_links:
        _check_pinned(extra, lx, ly)
        add(LinkKind.PINNED, extra.row, extra.col, side=extra.side)

    supports: List[List[int]] = [[] for _ in range(lx * ly)]
    for link in links:
        if link.kind is LinkKind.H:
            ends = [(link.row, link.col), (link.row, link.col + 1)]
        elif link.kind is LinkKind.V:
            ends = [(link.row, link.col), (link.row + 1, link.col)]
        else:
            ends = [(link.row, link.col)]
        for r, c in ends:
            supports[r * lx + c].append(link.id)

    plaquettes: List[Tuple[int, ...]] = []
    for r in range(ly - 1):
        for c in range(lx - 1):
            plaquettes.append((
                index[("h", r + 1, c)],
                index[("h", r, c)],
                index[("v", r, c)],
                index[("v", r, c + 1)],
            ))

    lattice = Lattice(
        lx=lx,
        ly=ly,
        links=tuple(links),
        vertex_supports=tuple(tuple(s) for s in supports),
        plaquette_supports=tuple(plaquettes),
        _index=index,
    )
    _log.debug(
        "Построена решётка %dx%d: рёбер=%d, вершин=%d, плакеток=%d",
        lx, ly, lattice.n_links, lattice.n_vertices, lattice.n_plaquettes,
    )
    return lattice
