# tests/lattice/test_lattice.py
# --- agent_meta ---
# role: lattice-geometry-test
# owner: @backend
# contract: Тестирует построение решётки, разрешение меток рёбер, пути X-струн и геометрические помощники
# last_reviewed: 2026-10-16
# interfaces:
#   - test_link_counts_and_order()
#   - test_supports_and_multiplicity()
#   - test_pinned_links()
#   - test_path_endpoints()
#   - test_default_paths()
#   - test_geometry_constants()
# --- /agent_meta ---

from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.lattice import (
    ExtraLink,
    InvalidLatticeError,
    InvalidPathError,
    LatticeSpec,
    LinkKind,
    PathSpec,
    PinnedLinkError,
    Side,
    UnknownLinkError,
    build_lattice,
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


@pytest.fixture
def lattice_4x3():
    return build_lattice(LatticeSpec(lx=4, ly=3))


@pytest.fixture
def lattice_4x3_pinned():
    return build_lattice(LatticeSpec(
        lx=4,
        ly=3,
        pinned_links=(
            ExtraLink(side=Side.LEFT, row=1, col=0),
            ExtraLink(side=Side.RIGHT, row=1, col=3),
        ),
    ))


def test_link_counts_and_order(lattice_4x3):
    """Рёбра нумеруются по строкам: горизонтальные, затем вертикальные к следующей строке"""
    assert lattice_4x3.n_links == 17
    assert lattice_4x3.n_vertices == 12
    assert lattice_4x3.n_plaquettes == 6
    assert lattice_4x3.resolve("h(0,0)") == 0
    assert lattice_4x3.resolve("v(0,0)") == 3
    assert lattice_4x3.resolve("h(1,0)") == 7
    assert lattice_4x3.resolve("v(1,3)") == 13
    assert lattice_4x3.resolve("h(2,2)") == 16
    assert lattice_4x3.links[8].label == "h(1,1)"


def test_supports_and_multiplicity(lattice_4x3):
    # угловая вершина: два ребра, внутренняя: четыре
    assert sorted(lattice_4x3.vertex_supports[0]) == [0, 3]
    assert len(lattice_4x3.vertex_supports[lattice_4x3.vertex_index((1, 1))]) == 4
    # плакетка (0,0): верх, низ, левое, правое
    assert lattice_4x3.plaquette_supports[0] == (7, 0, 3, 4)
    assert lattice_4x3.top_link(0) == 7
    assert lattice_4x3.plaquette_multiplicity(0) == 1
    assert lattice_4x3.plaquette_multiplicity(8) == 2
    assert lattice_4x3.is_edge_link(0)
    assert lattice_4x3.is_boundary_vertex((0, 2))
    assert not lattice_4x3.is_boundary_vertex((1, 1))
    # каждое ребро решётки лежит ровно на двух вершинах
    counts = [0] * lattice_4x3.n_links
    for support in lattice_4x3.vertex_supports:
        for link in support:
            counts[link] += 1
    assert counts == [2] * lattice_4x3.n_links


def test_pinned_links(lattice_4x3_pinned):
    """Закреплённые рёбра идут в конце, принадлежат одной вершине и ни одной плакетке"""
    lat = lattice_4x3_pinned
    assert lat.n_links == 19
    left = lat.resolve("pinned-left(1,0)")
    right = lat.resolve("pinned-right(1,3)")
    assert (left, right) == (17, 18)
    assert lat.pinned_link_ids == [17, 18]
    assert lat.links[left].kind is LinkKind.PINNED
    assert lat.incident_vertices(left) == [(1, 0)]
    assert lat.plaquette_multiplicity(left) == 0
    assert left in lat.vertex_supports[lat.vertex_index((1, 0))]

    with pytest.raises(PinnedLinkError):
        build_lattice(LatticeSpec(lx=4, ly=3, pinned_links=(ExtraLink(side=Side.LEFT, row=1, col=1),)))
    with pytest.raises(PinnedLinkError):
        build_lattice(LatticeSpec(lx=4, ly=3, pinned_links=(
            ExtraLink(side=Side.LEFT, row=1, col=0),
            ExtraLink(side=Side.LEFT, row=1, col=0),
        )))


def test_invalid_sizes_and_refs(lattice_4x3):
    with pytest.raises(ValidationError):
        LatticeSpec(lx=1, ly=3)
    with pytest.raises(InvalidLatticeError):
        build_lattice(LatticeSpec.model_construct(lx=1, ly=3, pinned_links=()))
    with pytest.raises(UnknownLinkError):
        lattice_4x3.resolve("h(2,3)")
    with pytest.raises(UnknownLinkError):
        lattice_4x3.resolve(99)
    with pytest.raises(UnknownLinkError):
        lattice_4x3.resolve("diag(0,0)")


def test_path_endpoints(lattice_4x3, lattice_4x3_pinned):
    assert path_endpoints(lattice_4x3, PathSpec(links=["h(1,1)"])) == [(1, 1), (1, 2)]
    assert path_endpoints(lattice_4x3, PathSpec(links=["h(1,0)", "h(1,1)", "v(1,2)"])) == [(1, 0), (2, 2)]
    # струна между закреплёнными рёбрами не оставляет зарядов на решётке
    assert path_endpoints(lattice_4x3_pinned, default_bump_path(lattice_4x3_pinned)) == []
    with pytest.raises(InvalidPathError):
        path_endpoints(lattice_4x3, PathSpec(links=["h(0,0)", "h(2,2)"]))
    with pytest.raises(InvalidPathError):
        path_endpoints(lattice_4x3, PathSpec(links=["h(1,0)", "h(1,0)"]))


def test_default_paths(lattice_4x3, lattice_4x3_pinned):
    lat3 = build_lattice(LatticeSpec(lx=3, ly=3))
    s1, s2 = default_superposition_paths(lat3)
    assert path_endpoints(lat3, s1) == [(0, 1), (2, 1)]
    assert path_endpoints(lat3, s2) == [(1, 0), (1, 2)]
    with pytest.raises(InvalidPathError):
        default_superposition_paths(build_lattice(LatticeSpec(lx=2, ly=3)))

    # при ly >= 5 обе струны вертикальные: вверх и вниз из центра
    lat5 = build_lattice(LatticeSpec(lx=5, ly=5))
    up, down = default_superposition_paths(lat5)
    assert central_vertex(lat5) == (2, 2)
    assert path_endpoints(lat5, up) == [(2, 2), (4, 2)]
    assert path_endpoints(lat5, down) == [(0, 2), (2, 2)]
    narrow = build_lattice(LatticeSpec(lx=2, ly=5))
    assert [path_endpoints(narrow, s) for s in default_superposition_paths(narrow)] == [[(2, 1), (4, 1)], [(0, 1), (2, 1)]]

    assert central_vertex(lattice_4x3) == (1, 2)
    assert central_horizontal_link(lattice_4x3) == lattice_4x3.resolve("h(1,1)")

    sites = bump_sites(lattice_4x3_pinned)
    assert sites.q1 == lattice_4x3_pinned.resolve("h(2,1)")
    assert sites.q2 == lattice_4x3_pinned.resolve("h(0,1)")
    assert (sites.a1, sites.a2) == ((2, 1), (0, 1))
    bump = [lattice_4x3_pinned.resolve(ref) for ref in default_bump_path(lattice_4x3_pinned).links]
    assert sites.q1 in bump and sites.q2 not in bump

    assert pinned_row_string(lattice_4x3_pinned, 3) == [17, 7, 8]
    with pytest.raises(InvalidPathError):
        pinned_row_string(lattice_4x3_pinned, 5)
    with pytest.raises(InvalidPathError):
        pinned_row_string(lattice_4x3, 1)


def test_geometry_constants():
    assert manhattan_distance((0, 0), (2, 3)) == 5
    assert entangling_count_per_cycle(4, 3) == 116
    assert entangling_count_per_cycle(2, 2) == 24
    assert mixed_state_mean_separation(4, 3) == Fraction(7, 3)
    assert mixed_state_mean_separation(2, 2) == Fraction(4, 3)
