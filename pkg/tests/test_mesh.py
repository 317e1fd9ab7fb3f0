"""Surface-of-revolution mesh: structure, accuracy hooks, bigons, cusp limits."""

import math

import numpy as np
import pytest
from scipy.sparse.csgraph import connected_components

from catchi.mesh import (
    CYLINDER,
    mesh_bigon,
    mesh_distance,
    mesh_to_json,
    meridian_levels,
    parabola_meridian_length,
    revolution_mesh,
)


@pytest.fixture(scope="module")
def mesh():
    return revolution_mesh(0.05, 1.0, 100, 128)


def test_mesh_structure(mesh):
    assert mesh.n_vertices == 100 * 128
    # meridian + ring + two diagonal families
    assert len(mesh.edge_w) == 99 * 128 + 100 * 128 + 2 * 99 * 128
    assert np.all(mesh.edge_w > 0.0)
    n, _ = connected_components(mesh.graph, directed=False)
    assert n == 1


def test_mesh_parameter_validation():
    with pytest.raises(ValueError):
        revolution_mesh(0.0, 1.0, 100, 128)
    with pytest.raises(ValueError):
        revolution_mesh(0.5, 0.2, 100, 128)
    with pytest.raises(ValueError):
        revolution_mesh(0.05, 1.0, 4, 128)


def test_meridian_weights_match_closed_form(mesh):
    for i in (0, 17, 50, 98):
        a, b = mesh.vertex_id(i, 0), mesh.vertex_id(i + 1, 0)
        w = mesh.graph[a].toarray().ravel()[b]
        exact = parabola_meridian_length(float(mesh.xs[i]), float(mesh.xs[i + 1]))
        assert w == pytest.approx(exact, rel=1e-4)  # spec asks only 1%


def test_mesh_distance_basics(mesh):
    a = mesh.vertex_id(10, 3)
    assert mesh_distance(mesh, a, a) == (0.0, [a])
    b = mesh.vertex_id(11, 3)
    d, path = mesh_distance(mesh, a, b)
    assert path == [a, b]
    assert d == pytest.approx(parabola_meridian_length(
        float(mesh.xs[10]), float(mesh.xs[11])), rel=1e-4)
    with pytest.raises(IndexError):
        mesh_distance(mesh, -1, a)
    with pytest.raises(IndexError):
        mesh_distance(mesh, a, mesh.n_vertices)


def test_cylinder_hook_distances():
    cyl = revolution_mesh(0.05, 1.05, 40, 64, profile=CYLINDER)
    a, b = cyl.vertex_id(20, 0), cyl.vertex_id(20, 32)
    d, _ = mesh_distance(cyl, a, b)
    assert d == pytest.approx(math.pi, rel=0.02)
    rep = mesh_bigon(cyl, a, b)
    assert rep.length_plus == pytest.approx(math.pi, rel=0.02)
    assert rep.length_minus == pytest.approx(math.pi, rel=0.02)


def test_bigon_preconditions(mesh):
    a = mesh.vertex_id(50, 0)
    with pytest.raises(ValueError):
        mesh_bigon(mesh, a, a)
    with pytest.raises(ValueError):
        mesh_bigon(mesh, a, mesh.vertex_id(50, 3))
    with pytest.raises(ValueError):
        mesh_bigon(mesh, a, mesh.vertex_id(51, 64))


def test_bigon_at_half(mesh):
    i0 = int(np.argmin(np.abs(mesh.xs - 0.5)))
    rep = mesh_bigon(mesh, mesh.vertex_id(i0, 0), mesh.vertex_id(i0, 64))
    assert rep.length_plus == pytest.approx(rep.length_minus, rel=0.01)
    assert rep.separation > 0.1 * rep.length_plus
    # The two paths pass on opposite sides of the cut meridians.
    cols_plus = {v % mesh.nphi for v in rep.path_plus}
    cols_minus = {v % mesh.nphi for v in rep.path_minus}
    assert rep.cut_minus not in cols_plus
    assert rep.cut_plus not in cols_minus


def test_mesh_json_export(mesh):
    doc = mesh_to_json(mesh)
    assert set(doc) == {"vertices", "edges"}
    assert len(doc["vertices"]) == mesh.n_vertices
    assert len(doc["edges"]) == len(mesh.edge_w)
    assert set(doc["vertices"][0]) == {"x", "phi"}
    e = doc["edges"][0]
    assert set(e) == {"i", "j", "w"} and e["w"] > 0


def test_cusp_tangent_ray(mesh):
    # Germs leaving the cusp-boundary ring along different meridians: the
    # normalized separation d/t decreases toward the mesh's resolution floor,
    # and the floor itself shrinks proportionally to x_min (tangent = a ray).
    def ratios(m, targets):
        levels = meridian_levels(m)
        out = []
        for target in targets:
            i = int(np.argmin(np.abs(levels - target)))
            t = float(levels[i])
            d, _ = mesh_distance(m, m.vertex_id(i, 0), m.vertex_id(i, m.nphi // 2))
            out.append(d / t)
        return out

    rs = ratios(mesh, (0.8, 0.6, 0.45, 0.3, 0.2, 0.12))
    assert all(x > y for x, y in zip(rs, rs[1:]))
    assert rs[-1] < 0.75

    fine = revolution_mesh(0.0125, 0.5, 160, 64)
    rs_fine = ratios(fine, (0.3, 0.2, 0.12, 0.06, 0.03, 0.02))
    assert all(x > y for x, y in zip(rs_fine, rs_fine[1:]))
    assert rs_fine[-1] < 0.2
