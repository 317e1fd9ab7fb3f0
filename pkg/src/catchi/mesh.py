"""Graph approximations of surfaces of revolution with a cusp.

The surface y = r(x) revolved around the x-axis carries the induced metric
ds^2 = (1 + r'(x)^2) dx^2 + r(x)^2 dphi^2.  A grid of vertices (x_i, phi_j)
is joined by meridian, ring and both diagonal edges, each weighted with the
quadrature length of the straight parameter-space segment; shortest paths in
the weighted graph are then certified upper bounds for surface distances that
converge under refinement.

The default profile r(x) = x^2 has a cusp at x = 0.  The cusp itself is not
meshed: the grid starts at x_min > 0 and statements about the cusp are limits
as x_min shrinks (the x_min boundary ring, of circumference 2*pi*x_min^2,
stands in for it at mesh resolution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra


@dataclass(frozen=True)
class Profile:
    """Radius function of the surface of revolution, with derivative."""

    name: str
    r: Callable[[np.ndarray], np.ndarray]
    dr: Callable[[np.ndarray], np.ndarray]


PARABOLA = Profile("parabola", lambda x: x * x, lambda x: 2.0 * x)
# Constant-radius test hook: the cylinder's geodesics are known exactly.
CYLINDER = Profile(
    "cylinder",
    lambda x: np.ones_like(np.asarray(x, float)),
    lambda x: np.zeros_like(np.asarray(x, float)),
)


def parabola_meridian_length(x0: float, x1: float) -> float:
    """Exact arclength of the parabola profile meridian from x0 to x1."""

    def F(x: float) -> float:
        return 0.5 * x * math.sqrt(1.0 + 4.0 * x * x) + 0.25 * math.asinh(2.0 * x)

    return F(x1) - F(x0)


@dataclass(frozen=True)
class MeshSurface:
    """Immutable weighted-graph approximation of a surface of revolution."""

    xs: np.ndarray
    phis: np.ndarray
    edge_i: np.ndarray
    edge_j: np.ndarray
    edge_w: np.ndarray
    profile: Profile
    graph: csr_matrix = field(repr=False, compare=False)

    @property
    def nx(self) -> int:
        return len(self.xs)

    @property
    def nphi(self) -> int:
        return len(self.phis)

    @property
    def n_vertices(self) -> int:
        return self.nx * self.nphi

    def vertex_id(self, i: int, j: int) -> int:
        """Grid coordinates (x index i, wrapped phi index j) to vertex id."""
        if not 0 <= i < self.nx:
            raise IndexError(f"x index {i} out of range")
        return i * self.nphi + j % self.nphi

    def vertex_xphi(self, v: int) -> tuple[float, float]:
        if not 0 <= v < self.n_vertices:
            raise IndexError(f"vertex id {v} out of range")
        return float(self.xs[v // self.nphi]), float(self.phis[v % self.nphi])


def revolution_mesh(
    x_min: float,
    x_max: float,
    nx: int,
    nphi: int,
    profile: Profile = PARABOLA,
    quad_points: int = 8,
) -> MeshSurface:
    """Build the weighted grid graph on [x_min, x_max] x S^1.

    Vertices are (x_i, phi_j) with x_i uniform in [x_min, x_max] and nphi
    equally spaced rings; edges are meridian steps, ring steps, and both
    diagonals of every grid quad.  Each weight is the composite-midpoint
    quadrature (``quad_points`` samples) of the induced length of the straight
    segment in (x, phi) parameters; ring weights are exact.
    """
    if not (0.0 < x_min < x_max):
        raise ValueError("need 0 < x_min < x_max")
    if nx < 8 or nphi < 8:
        raise ValueError("need nx, nphi >= 8")
    xs = np.linspace(x_min, x_max, nx)
    dphi = 2.0 * math.pi / nphi
    phis = np.arange(nphi) * dphi
    dx = xs[1] - xs[0]

    ii = np.arange(nx - 1)
    jj = np.arange(nphi)
    # Midpoint quadrature nodes along one x step, shared by every column.
    mids = xs[ii][:, None] + (np.arange(quad_points) + 0.5)[None, :] / quad_points * dx
    g_meri = np.sqrt(1.0 + profile.dr(mids) ** 2)
    w_meri_col = np.mean(dx * g_meri, axis=1)  # (nx-1,)
    w_diag_col = np.mean(
        np.sqrt((dx * g_meri) ** 2 + (dphi * profile.r(mids)) ** 2), axis=1
    )
    w_ring_row = dphi * profile.r(xs)  # exact: constant integrand

    def vid(i: np.ndarray, j: np.ndarray) -> np.ndarray:
        return i * nphi + (j % nphi)

    I, J = np.meshgrid(ii, jj, indexing="ij")  # (nx-1, nphi)
    meri_a, meri_b = vid(I, J), vid(I + 1, J)
    meri_w = np.broadcast_to(w_meri_col[:, None], I.shape)
    diagp_a, diagp_b = vid(I, J), vid(I + 1, J + 1)
    diagm_a, diagm_b = vid(I, J), vid(I + 1, J - 1)
    diag_w = np.broadcast_to(w_diag_col[:, None], I.shape)
    Ir, Jr = np.meshgrid(np.arange(nx), jj, indexing="ij")
    ring_a, ring_b = vid(Ir, Jr), vid(Ir, Jr + 1)
    ring_w = np.broadcast_to(w_ring_row[:, None], Ir.shape)

    edge_i = np.concatenate(
        [meri_a.ravel(), ring_a.ravel(), diagp_a.ravel(), diagm_a.ravel()]
    )
    edge_j = np.concatenate(
        [meri_b.ravel(), ring_b.ravel(), diagp_b.ravel(), diagm_b.ravel()]
    )
    edge_w = np.concatenate(
        [meri_w.ravel(), ring_w.ravel(), diag_w.ravel(), diag_w.ravel()]
    )
    assert np.all(edge_w > 0.0)
    n = nx * nphi
    graph = csr_matrix((edge_w, (edge_i, edge_j)), shape=(n, n))
    return MeshSurface(
        xs=xs,
        phis=phis,
        edge_i=edge_i,
        edge_j=edge_j,
        edge_w=edge_w,
        profile=profile,
        graph=graph,
    )


def _check_vertex(mesh: MeshSurface, v: int) -> None:
    if not isinstance(v, (int, np.integer)) or not 0 <= v < mesh.n_vertices:
        raise IndexError(f"invalid vertex id {v!r}")


def _shortest(
    graph: csr_matrix, a: int, b: int
) -> tuple[float, list[int]]:
    dist, pred = dijkstra(
        graph, directed=False, indices=a, return_predecessors=True
    )
    if not np.isfinite(dist[b]):
        raise ValueError(f"vertices {a} and {b} are disconnected")
    path = [b]
    while path[-1] != a:
        path.append(int(pred[path[-1]]))
    path.reverse()
    return float(dist[b]), path


def mesh_distance(mesh: MeshSurface, a: int, b: int) -> tuple[float, list[int]]:
    """Exact shortest path between two vertex ids in the weighted graph."""
    _check_vertex(mesh, a)
    _check_vertex(mesh, b)
    if a == b:
        return 0.0, [a]
    return _shortest(mesh.graph, a, b)


def _drop_column(mesh: MeshSurface, j_cut: int) -> csr_matrix:
    """Subgraph with the whole meridian column phi_j removed."""
    keep = (mesh.edge_i % mesh.nphi != j_cut) & (mesh.edge_j % mesh.nphi != j_cut)
    n = mesh.n_vertices
    return csr_matrix(
        (mesh.edge_w[keep], (mesh.edge_i[keep], mesh.edge_j[keep])), shape=(n, n)
    )


@dataclass(frozen=True)
class BigonReport:
    """Two shortest paths forced around opposite sides, plus their separation.

    ``separation`` is the symmetric Hausdorff distance between the two vertex
    paths, measured with full-graph shortest-path distances.
    """

    path_plus: list[int]
    path_minus: list[int]
    length_plus: float
    length_minus: float
    separation: float
    cut_plus: int
    cut_minus: int


def mesh_bigon(mesh: MeshSurface, a: int, b: int) -> BigonReport:
    """Two geodesics between same-ring antipodes, one on each side.

    Requires a and b on the same ring with phi indices exactly nphi/2 apart.
    The graph is cut along the meridian a quarter turn to either side of a,
    forcing the shortest path to pass the opposite way; the two resulting
    paths land on either side of the axis.
    """
    _check_vertex(mesh, a)
    _check_vertex(mesh, b)
    if a == b:
        raise ValueError("endpoints coincide; no bigon")
    ia, ja = divmod(a, mesh.nphi)
    ib, jb = divmod(b, mesh.nphi)
    if ia != ib:
        raise ValueError("endpoints must lie on the same ring")
    if mesh.nphi % 4 != 0:
        raise ValueError("bigon cuts need nphi divisible by 4")
    if (jb - ja) % mesh.nphi != mesh.nphi // 2:
        raise ValueError("endpoints must be antipodal on the ring")
    cut_plus = (ja + mesh.nphi // 4) % mesh.nphi
    cut_minus = (ja - mesh.nphi // 4) % mesh.nphi
    len_minus, path_minus = _shortest(_drop_column(mesh, cut_plus), a, b)
    len_plus, path_plus = _shortest(_drop_column(mesh, cut_minus), a, b)

    def hausdorff_oneway(src: list[int], dst: list[int]) -> float:
        dist = dijkstra(mesh.graph, directed=False, indices=dst, min_only=True)
        return float(np.max(dist[src]))

    separation = max(
        hausdorff_oneway(path_plus, path_minus),
        hausdorff_oneway(path_minus, path_plus),
    )
    return BigonReport(
        path_plus=path_plus,
        path_minus=path_minus,
        length_plus=len_plus,
        length_minus=len_minus,
        separation=separation,
        cut_plus=cut_plus,
        cut_minus=cut_minus,
    )


def mesh_to_json(mesh: MeshSurface) -> dict:
    """Plain-JSON form: {vertices: [{x, phi}], edges: [{i, j, w}]}."""
    xs = np.repeat(mesh.xs, mesh.nphi)
    phis = np.tile(mesh.phis, mesh.nx)
    return {
        "vertices": [
            {"x": float(x), "phi": float(phi)} for x, phi in zip(xs, phis)
        ],
        "edges": [
            {"i": int(i), "j": int(j), "w": float(w)}
            for i, j, w in zip(mesh.edge_i, mesh.edge_j, mesh.edge_w)
        ],
    }


def ring_distances(mesh: MeshSurface, sources: list[int]) -> np.ndarray:
    """Full-graph distances from a set of source vertices (min over sources)."""
    return dijkstra(mesh.graph, directed=False, indices=sources, min_only=True)


def meridian_levels(mesh: MeshSurface) -> np.ndarray:
    """Cumulative meridian arclength of each ring above the x_min boundary."""
    mids_w = []
    for i in range(mesh.nx - 1):
        a = mesh.vertex_id(i, 0)
        b = mesh.vertex_id(i + 1, 0)
        row = mesh.graph[a].toarray().ravel()
        mids_w.append(row[b])
    return np.concatenate([[0.0], np.cumsum(mids_w)])
