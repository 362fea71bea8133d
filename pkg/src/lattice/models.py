# src/lattice/models.py
# --- agent_meta ---
# role: lattice-models
# owner: @backend
# contract: Модели геометрии решётки: спецификация, рёбра, неизменяемая решётка и путь X-струны
# last_reviewed: 2026-10-12
# interfaces:
#   - LinkKind, Side
#   - ExtraLink, LatticeSpec, PathSpec (pydantic)
#   - Link, Lattice (frozen dataclasses)
# --- /agent_meta ---

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from .errors import UnknownLinkError

VertexId = Tuple[int, int]
LinkRef = Union[int, str]

_LABEL_RE = re.compile(r"^\s*(h|v|pinned-(?:left|right|top|bottom))\((\d+)\s*,\s*(\d+)\)\s*$")


class LinkKind(str, Enum):
    """Тип ребра: горизонтальное, вертикальное или закреплённое внешнее."""
    H = "h"
    V = "v"
    PINNED = "pinned"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TOP = "top"
    BOTTOM = "bottom"


class ExtraLink(BaseModel):
    """Дополнительное закреплённое ребро на граничной вершине."""
    model_config = ConfigDict(frozen=True)

    side: Side = Field(description="Сторона решётки, наружу от которой торчит ребро")
    row: int = Field(ge=0, description="Строка вершины крепления")
    col: int = Field(ge=0, description="Столбец вершины крепления")


class LatticeSpec(BaseModel):
    """Спецификация решётки lx×ly вершин с открытыми границами."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    lx: int = Field(ge=2, description="Число вершин по x")
    ly: int = Field(ge=2, description="Число вершин по y")
    pinned_links: Tuple[ExtraLink, ...] = Field(default=(), description="Закреплённые рёбра")


class PathSpec(BaseModel):
    """Упорядоченный связный путь рёбер для X-струны.

    Ссылки могут быть индексами или метками вида ``h(1,0)``, ``v(0,2)``,
    ``pinned-left(1,0)``; разрешаются через ``Lattice.resolve``.
    """
    links: List[LinkRef] = Field(min_length=1, description="Рёбра пути в порядке обхода")


@dataclass(frozen=True)
class Link:
    id: int
    kind: LinkKind
    row: int
    col: int
    side: Optional[Side] = None

    @property
    def pinned(self) -> bool:
        return self.kind is LinkKind.PINNED

    @property
    def label(self) -> str:
        if self.pinned:
            return f"pinned-{self.side.value}({self.row},{self.col})"
        return f"{self.kind.value}({self.row},{self.col})"


@dataclass(frozen=True)
class Lattice:
    """Неизменяемая геометрия решётки.

    Вершина (row, col): row растёт вверх, row=0 - нижняя строка.
    h(r,c) соединяет (r,c)-(r,c+1); v(r,c) соединяет (r,c)-(r+1,c).
    Плакетка (r,c) = {h(r+1,c) (верхнее), h(r,c), v(r,c), v(r,c+1)}.
    Порядок индексов рёбер: по строкам, в строке сначала горизонтальные,
    затем вертикальные к следующей строке; закреплённые рёбра в конце.
    """
    lx: int
    ly: int
    links: Tuple[Link, ...]
    vertex_supports: Tuple[Tuple[int, ...], ...]
    plaquette_supports: Tuple[Tuple[int, ...], ...]
    _index: Dict[Tuple[str, int, int], int] = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_links(self) -> int:
        return len(self.links)

    @property
    def n_vertices(self) -> int:
        return self.lx * self.ly

    @property
    def n_plaquettes(self) -> int:
        return (self.lx - 1) * (self.ly - 1)

    @property
    def vertices(self) -> List[VertexId]:
        return [(r, c) for r in range(self.ly) for c in range(self.lx)]

    @property
    def plaquettes(self) -> List[VertexId]:
        return [(r, c) for r in range(self.ly - 1) for c in range(self.lx - 1)]

    @property
    def pinned_link_ids(self) -> List[int]:
        return [link.id for link in self.links if link.pinned]

    def vertex_index(self, vertex: VertexId) -> int:
        r, c = vertex
        if not (0 <= r < self.ly and 0 <= c < self.lx):
            raise IndexError(f"vertex {vertex} outside {self.lx}x{self.ly} lattice")
        return r * self.lx + c

    def vertex_of(self, index: int) -> VertexId:
        return divmod(index, self.lx)

    def plaquette_index(self, plaquette: VertexId) -> int:
        r, c = plaquette
        return r * (self.lx - 1) + c

    def link_index(self, kind: Union[LinkKind, str], row: int, col: int, side: Optional[Side] = None) -> int:
        kind = LinkKind(kind)
        key = (kind.value if side is None else f"{kind.value}-{Side(side).value}", row, col)
        if key not in self._index:
            raise UnknownLinkError(f"{key[0]}({row},{col})")
        return self._index[key]

    def resolve(self, ref: LinkRef) -> int:
        """Переводит индекс или метку ребра в индекс."""
        if isinstance(ref, int):
            if not 0 <= ref < self.n_links:
                raise UnknownLinkError(ref)
            return ref
        match = _LABEL_RE.match(ref)
        if match is None:
            raise UnknownLinkError(ref)
        name, row, col = match.group(1), int(match.group(2)), int(match.group(3))
        if name.startswith("pinned-"):
            return self.link_index(LinkKind.PINNED, row, col, side=Side(name.split("-", 1)[1]))
        return self.link_index(name, row, col)

    def incident_vertices(self, link_id: int) -> List[VertexId]:
        """Вершины решётки на концах ребра; у закреплённого ребра одна вершина."""
        link = self.links[link_id]
        if link.kind is LinkKind.H:
            return [(link.row, link.col), (link.row, link.col + 1)]
        if link.kind is LinkKind.V:
            return [(link.row, link.col), (link.row + 1, link.col)]
        return [(link.row, link.col)]

    def link_plaquettes(self, link_id: int) -> List[int]:
        return [p for p, support in enumerate(self.plaquette_supports) if link_id in support]

    def plaquette_multiplicity(self, link_id: int) -> int:
        """Сколько плакеток содержит ребро: 2 (объём), 1 (край), 0 (закреплённое)."""
        return len(self.link_plaquettes(link_id))

    def is_edge_link(self, link_id: int) -> bool:
        return self.plaquette_multiplicity(link_id) == 1

    def is_boundary_vertex(self, vertex: VertexId) -> bool:
        r, c = vertex
        return r in (0, self.ly - 1) or c in (0, self.lx - 1)

    def top_link(self, plaquette: int) -> int:
        return self.plaquette_supports[plaquette][0]

    def to_json(self) -> Dict[str, Any]:
        return {
            "lx": self.lx,
            "ly": self.ly,
            "links": [
                {"id": l.id, "kind": l.kind.value, "row": l.row, "col": l.col, "pinned": l.pinned}
                for l in self.links
            ],
            "vertex_supports": [list(s) for s in self.vertex_supports],
            "plaquette_supports": [list(s) for s in self.plaquette_supports],
        }
