# src/lattice/geometry.py
# --- agent_meta ---
# role: lattice-geometry
# owner: @backend
# contract: Расстояния, формулы подсчёта, проверка путей и пути по умолчанию для струн
# last_reviewed: 2026-10-12
# interfaces:
#   - manhattan_distance(v1, v2) -> int
#   - entangling_count_per_cycle(lx, ly) -> int
#   - mixed_state_mean_separation(lx, ly) -> Fraction
#   - path_endpoints(lattice, path) -> list[VertexId]
#   - default_superposition_paths(lattice) -> (PathSpec, PathSpec)
#   - default_bump_path(lattice) -> PathSpec
#   - bump_sites(lattice) -> BumpSites
#   - pinned_row_string(lattice, j) -> list[int]
#   - central_vertex(lattice), central_horizontal_link(lattice)
# --- /agent_meta ---

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import List, NamedTuple, Sequence, Tuple

from .errors import InvalidPathError, LatticeError
from .models import Lattice, LinkKind, PathSpec, Side, VertexId


def manhattan_distance(v1: VertexId, v2: VertexId) -> int:
    return abs(v1[0] - v2[0]) + abs(v1[1] - v2[1])


def entangling_count_per_cycle(lx: int, ly: int) -> int:
    """Число двухкубитных гейтов в одном шаге Троттера на уровне гейтов."""
    if lx < 2 or ly < 2:
        raise LatticeError(f"entangling count undefined for {lx}x{ly}")
    return 16 * lx * ly - 12 * (lx + ly) + 8


def mixed_state_mean_separation(lx: int, ly: int) -> Fraction:
    """Среднее манхэттенское расстояние по всем неупорядоченным парам различных вершин.

    Для максимально смешанного состояния пары зарядов в секторе из двух
    возбуждений распределены равномерно, поэтому простое среднее точно.
    """
    if lx * ly < 2:
        raise LatticeError("need at least two vertices")
    vertices = [(r, c) for r in range(ly) for c in range(lx)]
    pairs = list(combinations(vertices, 2))
    total = sum(manhattan_distance(a, b) for a, b in pairs)
    return Fraction(total, len(pairs))


def _resolve(lattice: Lattice, path: PathSpec | Sequence[int]) -> List[int]:
    refs = path.links if isinstance(path, PathSpec) else list(path)
    return [lattice.resolve(ref) for ref in refs]


def path_endpoints(lattice: Lattice, path: PathSpec | Sequence[int]) -> List[VertexId]:
    """Проверяет путь и возвращает вершины решётки нечётной степени.

    Это ровно те вершины, которые X-струна вдоль пути переводит в A_v = -1.
    Концы на внешних вершинах закреплённых рёбер не возвращаются.
    """
    ids = _resolve(lattice, path)
    if len(set(ids)) != len(ids):
        raise InvalidPathError("link repeated", ids)
    for a, b in zip(ids, ids[1:]):
        if not set(lattice.incident_vertices(a)) & set(lattice.incident_vertices(b)):
            raise InvalidPathError(
                f"{lattice.links[a].label} and {lattice.links[b].label} share no vertex", ids
            )
    degree: Counter = Counter()
    external = 0
    for link_id in ids:
        for vertex in lattice.incident_vertices(link_id):
            degree[vertex] += 1
        if lattice.links[link_id].pinned:
            external += 1
    odd = sorted(v for v, d in degree.items() if d % 2 == 1)
    if len(odd) + external not in (0, 2):
        raise InvalidPathError("path is not a simple open string", ids)
    return odd


def central_vertex(lattice: Lattice) -> VertexId:
    return (lattice.ly // 2, lattice.lx // 2)


def central_horizontal_link(lattice: Lattice) -> int:
    return lattice.link_index(LinkKind.H, lattice.ly // 2, (lattice.lx - 1) // 2)


def default_superposition_paths(lattice: Lattice) -> Tuple[PathSpec, PathSpec]:
    """Две струны длины 2 из центральной вершины (r, c).

    При ly >= 5 обе вертикальные: s1 вверх до (r+2, c), s2 вниз до (r-2, c),
    у каждой один заряд в центре и второй на расстоянии 2. На более низких
    решётках вертикальной пары нет места, и пути образуют крест через центр:
    s1 вертикальный (r-1, c)-(r+1, c), s2 горизонтальный (r, c-1)-(r, c+1).
    """
    r, c = central_vertex(lattice)
    if r >= 2 and r + 2 <= lattice.ly - 1:
        s1 = PathSpec(links=[lattice.link_index(LinkKind.V, r, c), lattice.link_index(LinkKind.V, r + 1, c)])
        s2 = PathSpec(links=[lattice.link_index(LinkKind.V, r - 1, c), lattice.link_index(LinkKind.V, r - 2, c)])
        return s1, s2
    if not (1 <= r <= lattice.ly - 2 and 1 <= c <= lattice.lx - 2):
        raise InvalidPathError(
            f"lattice {lattice.lx}x{lattice.ly} has no interior central vertex; pass explicit paths"
        )
    s1 = PathSpec(links=[lattice.link_index(LinkKind.V, r - 1, c), lattice.link_index(LinkKind.V, r, c)])
    s2 = PathSpec(links=[lattice.link_index(LinkKind.H, r, c - 1), lattice.link_index(LinkKind.H, r, c)])
    return s1, s2


def _pinned_on_row(lattice: Lattice, side: Side, row: int) -> int:
    return lattice.link_index(LinkKind.PINNED, row, 0 if side is Side.LEFT else lattice.lx - 1, side=side)


class BumpSites(NamedTuple):
    """Характерные места струны с горбом: верх горба, зеркальное ребро внизу и их вершины."""
    q1: int
    q2: int
    a1: VertexId
    a2: VertexId


def _bump_geometry(lattice: Lattice) -> Tuple[int, int, int]:
    m = lattice.ly // 2
    c0 = lattice.lx // 2 - 1
    if m + 1 > lattice.ly - 1 or m - 1 < 0 or c0 < 0:
        raise InvalidPathError(f"lattice {lattice.lx}x{lattice.ly} too small for a string with a bump")
    return m, c0, c0 + 1


def default_bump_path(lattice: Lattice) -> PathSpec:
    """Струна от левого закреплённого ребра до правого вдоль средней строки
    с горбом на одну строку вверх в центральных столбцах."""
    m, c0, c1 = _bump_geometry(lattice)
    links = [_pinned_on_row(lattice, Side.LEFT, m)]
    links += [lattice.link_index(LinkKind.H, m, c) for c in range(0, c0)]
    links += [
        lattice.link_index(LinkKind.V, m, c0),
        lattice.link_index(LinkKind.H, m + 1, c0),
        lattice.link_index(LinkKind.V, m, c1),
    ]
    links += [lattice.link_index(LinkKind.H, m, c) for c in range(c1, lattice.lx - 1)]
    links.append(_pinned_on_row(lattice, Side.RIGHT, m))
    return PathSpec(links=links)


def bump_sites(lattice: Lattice) -> BumpSites:
    m, c0, _ = _bump_geometry(lattice)
    return BumpSites(
        q1=lattice.link_index(LinkKind.H, m + 1, c0),
        q2=lattice.link_index(LinkKind.H, m - 1, c0),
        a1=(m + 1, c0),
        a2=(m - 1, c0),
    )


def pinned_row_string(lattice: Lattice, j: int) -> List[int]:
    """Q1..Qj: левое закреплённое ребро и следующие за ним горизонтальные рёбра его строки."""
    left = [l for l in lattice.links if l.pinned and l.side is Side.LEFT]
    if not left:
        raise InvalidPathError("lattice has no pinned left link")
    q1 = left[0]
    if not 1 <= j <= lattice.lx:
        raise InvalidPathError(f"string length {j} exceeds row length {lattice.lx}")
    return [q1.id] + [lattice.link_index(LinkKind.H, q1.row, c) for c in range(j - 1)]
