from __future__ import annotations

from collections import Counter

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folia.errors import ArgumentError, DegenerateSaddle, MeshError
from folia.graph import SADDLE, counts, first_betti, validate
from folia.ingest import (
    MAXIMUM,
    MINIMUM,
    ScalarMesh,
    build_reeb,
    classify_critical,
    level_component_count,
    stable_test,
    straddle_count,
)
from folia.meshes import bumpy_sphere, icosphere, monkey_saddle_sphere, smooth_random_field, torus_mesh


def level_components_nx(mesh: ScalarMesh, t: float) -> int:
    """Independent count: crossed edges joined through the triangles they share."""
    f = mesh.field
    g = nx.Graph()
    for tri in mesh.triangles.tolist():
        crossed = [tuple(sorted((a, b))) for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0]))
                   if (f[a] > t) != (f[b] > t)]
        g.add_nodes_from(crossed)
        if len(crossed) == 2:
            g.add_edge(*crossed)
    return nx.number_connected_components(g)


def kinds(points) -> Counter:
    return Counter(p.kind for p in points)


def test_height_on_sphere_has_two_extrema():
    crit = classify_critical(icosphere(3))
    assert kinds(crit) == {MINIMUM: 1, MAXIMUM: 1}


def test_height_on_torus():
    mesh = torus_mesh()
    assert mesh.euler_characteristic == 0
    crit = classify_critical(mesh)
    assert kinds(crit) == {MINIMUM: 1, SADDLE: 2, MAXIMUM: 1}
    # for the upright torus the extrema are the outermost points along z
    zmin, zmax = mesh.field.min(), mesh.field.max()
    assert crit[0].value == zmin and crit[-1].value == zmax


def test_torus_reeb_graph_shape():
    g = build_reeb(torus_mesh())
    assert validate(g).ok
    assert (counts(g).k, counts(g).l, len(g.edges), first_betti(g)) == (2, 2, 4, 1)
    # min -> lower saddle -> two arcs -> upper saddle -> max
    levels = sorted(g.nodes, key=lambda x: x.level)
    lo, up = levels[1].id, levels[2].id
    between = [e for e in g.edges if {e.source, e.target} == {lo, up}]
    assert len(between) == 2
    assert all(e.source == lo for e in between)


def test_bumpy_sphere_is_a_y():
    mesh = bumpy_sphere()
    assert kinds(classify_critical(mesh)) == {MINIMUM: 1, SADDLE: 1, MAXIMUM: 2}
    g = build_reeb(mesh)
    (q,) = g.nodes_of(SADDLE)
    assert sorted(p.sign for p in q.ports) == ["+", "+", "-"]


def test_monkey_saddle_needs_split():
    mesh = monkey_saddle_sphere()
    with pytest.raises(DegenerateSaddle) as info:
        classify_critical(mesh)
    assert info.value.multiplicity == 2
    assert f"vertex {info.value.vertex}" in str(info.value)
    crit = classify_critical(mesh, split=True)
    assert sum(p.multiplicity for p in crit if p.kind == SADDLE) == counts(build_reeb(mesh, split=True)).l


def test_split_unfolding_keeps_levels_and_euler_characteristic():
    mesh = monkey_saddle_sphere()
    g = build_reeb(mesh, split=True)
    assert validate(g).ok
    c = counts(g)
    assert c.k - c.l == mesh.euler_characteristic
    v = [p for p in classify_critical(mesh, split=True) if p.multiplicity == 2][0].vertex
    unfolded = [x for x in g.nodes if x.id.startswith(f"v{v}")]
    assert len(unfolded) == 2
    assert len({x.level for x in unfolded}) == 1


def test_stable_test_on_extrema_and_saddles():
    mesh = bumpy_sphere()
    for p in classify_critical(mesh):
        assert stable_test(mesh, p) == (p.kind != SADDLE)


def test_level_count_rejects_vertex_values():
    mesh = icosphere(1)
    with pytest.raises(ArgumentError):
        level_component_count(mesh, float(mesh.field[3]))


def test_level_count_outside_range_is_zero():
    mesh = icosphere(1)
    assert level_component_count(mesh, 10.0) == 0


@pytest.mark.parametrize("build", [icosphere, torus_mesh, bumpy_sphere])
def test_level_count_matches_networkx(build, rng):
    mesh = build()
    for _ in range(10):
        t = rng.uniform(mesh.field.min(), mesh.field.max())
        assert level_component_count(mesh, t) == level_components_nx(mesh, t)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_fields_obey_morse_relation(s):
    rng = np.random.default_rng(s)
    mesh = icosphere(2) if s % 2 else torus_mesh(16, 16)
    mesh = mesh.with_field(smooth_random_field(mesh, rng))
    crit = classify_critical(mesh, split=True)
    k = sum(p.kind != SADDLE for p in crit)
    l = sum(p.multiplicity for p in crit if p.kind == SADDLE)
    assert k - l == mesh.euler_characteristic
    g = build_reeb(mesh, split=True)
    assert validate(g).ok
    assert (counts(g).k, counts(g).l) == (k, l)
    assert first_betti(g) == (2 - mesh.euler_characteristic) // 2


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_ties_are_broken_by_vertex_index(s):
    rng = np.random.default_rng(s)
    mesh = icosphere(2)
    coarse = np.round(smooth_random_field(mesh, rng), 1)
    mesh = mesh.with_field(coarse)
    g = build_reeb(mesh, split=True)
    assert validate(g).ok
    assert counts(g).k - counts(g).l == 2


def test_straddle_count_on_torus():
    mesh = torus_mesh()
    g = build_reeb(mesh)
    levels = sorted(x.level for x in g.nodes)
    mid = (levels[1] + levels[2]) / 2
    assert straddle_count(g, mid) == 2
    assert straddle_count(g, (levels[0] + levels[1]) / 2) == 1
    assert straddle_count(g, levels[-1] + 1) == 0


# ---------------------------------------------------------------------------
# mesh validation
# ---------------------------------------------------------------------------


def _tetra() -> tuple[np.ndarray, np.ndarray]:
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float)
    t = np.array([[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]])
    return v, t


def test_tetrahedron_is_accepted():
    v, t = _tetra()
    mesh = ScalarMesh(v, t, v[:, 2] + 0.01 * v[:, 0])
    mesh.check()
    assert mesh.euler_characteristic == 2


def test_open_mesh_rejected():
    v, t = _tetra()
    with pytest.raises(MeshError, match="triangles"):
        ScalarMesh(v, t[:3], v[:, 2]).check()


def test_unused_vertex_rejected():
    v, t = _tetra()
    v = np.vstack([v, [5, 5, 5]])
    with pytest.raises(MeshError, match="no triangle"):
        ScalarMesh(v, t, v[:, 2]).check()


def test_degenerate_triangle_rejected():
    v, t = _tetra()
    t = np.vstack([t, [0, 0, 1]])
    with pytest.raises(MeshError, match="degenerate"):
        ScalarMesh(v, t, v[:, 2]).check()


def test_flipped_face_of_orientable_mesh_accepted():
    v, t = _tetra()
    t = t.copy()
    t[0] = t[0][::-1]
    ScalarMesh(v, t, v[:, 2]).check()


def test_projective_plane_rejected():
    # six-vertex triangulation of RP^2: closed, every link a cycle, not orientable
    t = np.array([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
                  (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)])
    v = np.random.default_rng(0).normal(size=(6, 3))
    with pytest.raises(MeshError, match="orientable"):
        ScalarMesh(v, t, v[:, 2]).check()


def test_disconnected_mesh_rejected():
    v, t = _tetra()
    v2 = np.vstack([v, v + 10])
    t2 = np.vstack([t, t + 4])
    with pytest.raises(MeshError, match="connected"):
        ScalarMesh(v2, t2, v2[:, 2]).check()


def test_pinched_vertex_rejected():
    # two tetrahedra glued at one vertex: every edge is fine but the link is two circles
    v, t = _tetra()
    v2 = np.vstack([v, v[1:] + 3])
    t2 = np.vstack([t, np.where(t == 0, 0, t + 3)])
    with pytest.raises(MeshError):
        ScalarMesh(v2, t2, v2[:, 2]).check()


def test_field_length_mismatch_rejected():
    v, t = _tetra()
    with pytest.raises(MeshError):
        ScalarMesh(v, t, [0.0, 1.0])


def test_non_finite_field_rejected():
    v, t = _tetra()
    with pytest.raises(MeshError):
        ScalarMesh(v, t, [0.0, 1.0, np.nan, 2.0])
