"""Exactly-computable metric spaces with closed-form distances.

Three families, all with exact formulas (no meshes here):

* circles of circumference L (L = +inf means the real line),
* Euclidean cones over a base space — cones over circles are the completed
  branched covers of the punctured plane, L = +inf the universal one,
* the half-plane {x > 0} with its boundary crushed to a single point.

Each space ships a MetricOracle (with a vectorized ``distance_array``) and
constant-speed geodesic samplers compatible with metric.cat_test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .metric import CatWitness, FuncSampler, TriangleSpec

# --------------------------------------------------------------------------
# Euclidean plane (reference oracle: every comparison here is an equality)


class PlaneOracle:
    """The Euclidean plane on points (x, y)."""

    def distance(self, p, q) -> float:
        return math.hypot(p[0] - q[0], p[1] - q[1])

    def distance_array(self, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
        return np.linalg.norm(np.asarray(P, float) - np.asarray(Q, float), axis=-1)


def segment(p, q) -> FuncSampler:
    """Constant-speed straight segment between two planar points."""
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    return FuncSampler(
        func=lambda u: tuple(p + u * (q - p)),
        func_array=lambda us: p[None, :] + np.asarray(us)[:, None] * (q - p)[None, :],
    )


def plane_triangle(v0, v1, v2, n: int = 32) -> TriangleSpec:
    return TriangleSpec(
        vertices=(tuple(v0), tuple(v1), tuple(v2)),
        edges=(segment(v0, v1), segment(v1, v2), segment(v2, v0)),
        n=n,
    )


# --------------------------------------------------------------------------
# Circles (and the line as the infinite-circumference case)


@dataclass(frozen=True)
class CirclePoint:
    """Position on a circle of circumference L; L = +inf means the line."""

    theta: float
    L: float = math.inf


def _signed_gap(theta1: float, theta2: float, L: float) -> float:
    """Shortest signed angular displacement from theta1 to theta2."""
    if math.isinf(L):
        return theta2 - theta1
    return (theta2 - theta1 + L / 2.0) % L - L / 2.0


def circle_distance(p: CirclePoint, q: CirclePoint) -> float:
    """Arc distance min_k |theta_p - theta_q + kL| (plain |gap| on the line)."""
    if p.L != q.L:
        raise ValueError(f"mismatched circumferences {p.L!r} and {q.L!r}")
    return abs(_signed_gap(p.theta, q.theta, p.L))


class CircleOracle:
    """The circle of circumference L as a metric space of CirclePoints."""

    def __init__(self, L: float):
        if not L > 0.0:
            raise ValueError("circumference must be positive")
        self.L = L

    def distance(self, p: CirclePoint, q: CirclePoint) -> float:
        if p.L != self.L or q.L != self.L:
            raise ValueError("point circumference disagrees with the oracle")
        return circle_distance(p, q)

    def distance_array(self, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
        gap = np.asarray(Q, float) - np.asarray(P, float)
        if math.isinf(self.L):
            return np.abs(gap).reshape(-1)
        return np.abs((gap + self.L / 2.0) % self.L - self.L / 2.0).reshape(-1)


def circle_arc(p: CirclePoint, q: CirclePoint) -> FuncSampler:
    """Constant-speed shorter arc from p to q (a geodesic of the circle)."""
    if p.L != q.L:
        raise ValueError("mismatched circumferences")
    gap = _signed_gap(p.theta, q.theta, p.L)
    return FuncSampler(
        func=lambda u: CirclePoint(p.theta + u * gap, p.L),
        func_array=lambda us: (p.theta + np.asarray(us, float) * gap)[:, None],
    )


def circle_triangle(thetas: Sequence[float], L: float, n: int = 32) -> TriangleSpec:
    """Triangle in the circle with shorter-arc edges between three points."""
    v = [CirclePoint(t, L) for t in thetas]
    return TriangleSpec(
        vertices=(v[0], v[1], v[2]),
        edges=(circle_arc(v[0], v[1]), circle_arc(v[1], v[2]), circle_arc(v[2], v[0])),
        n=n,
    )


# --------------------------------------------------------------------------
# Euclidean cones


@dataclass(frozen=True)
class ConePoint:
    """Radius t >= 0 and a base point; every point with t = 0 is the apex."""

    t: float
    base: object

    @property
    def theta(self) -> float:
        base = self.base
        return base.theta if isinstance(base, CirclePoint) else float(base)


def cone_distance(base, p: ConePoint, q: ConePoint) -> float:
    """Distance in the Euclidean cone over the space ``base``.

    The flat law of cosines with the base distance capped at pi as the angle;
    beyond angular separation pi the geodesic passes through the apex, giving
    t_p + t_q.
    """
    if p.t < 0.0 or q.t < 0.0:
        raise ValueError("cone radii must be nonnegative")
    if p.t == 0.0:
        return q.t
    if q.t == 0.0:
        return p.t
    delta = min(math.pi, base.distance(p.base, q.base))
    # Stable form of the flat law of cosines: no cancellation for nearby points.
    return math.hypot(
        p.t - q.t, 2.0 * math.sqrt(p.t * q.t) * math.sin(delta / 2.0)
    )


class ConeOracle:
    """Cone over a circle of circumference L (branched plane for L = 2*pi*k).

    Points are ConePoints whose base is a CirclePoint with the same L; the
    array form packs a point as a row (t, theta).
    """

    def __init__(self, L: float):
        self.L = L
        self.base = CircleOracle(L)

    def point(self, t: float, theta: float) -> ConePoint:
        return ConePoint(t, CirclePoint(theta, self.L))

    def distance(self, p: ConePoint, q: ConePoint) -> float:
        return cone_distance(self.base, p, q)

    def distance_array(self, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
        P = np.asarray(P, float)
        Q = np.asarray(Q, float)
        tp, tq = P[:, 0], Q[:, 0]
        gap = Q[:, 1] - P[:, 1]
        if math.isinf(self.L):
            delta = np.abs(gap)
        else:
            delta = np.abs((gap + self.L / 2.0) % self.L - self.L / 2.0)
        delta = np.minimum(delta, math.pi)
        return np.hypot(tp - tq, 2.0 * np.sqrt(tp * tq) * np.sin(delta / 2.0))


def cone_geodesic_point(L: float, p: ConePoint, q: ConePoint, u: float) -> ConePoint:
    """Point at parameter u on the constant-speed cone geodesic from p to q.

    For angular separation < pi the segment is computed by developing the
    sector spanned by p and q onto the plane; at separation >= pi (including
    the tie at exactly pi) the geodesic is the broken path through the apex.
    """
    if p.t == 0.0 and q.t == 0.0:
        raise ValueError("both endpoints are the apex")
    theta_p = p.theta if p.t > 0.0 else q.theta
    theta_q = q.theta if q.t > 0.0 else p.theta
    gap = _signed_gap(theta_p, theta_q, L)
    if p.t > 0.0 and q.t > 0.0 and abs(gap) < math.pi:
        # Develop: p at angle 0, q at angle |gap| in a flat sector.
        px, py = p.t, 0.0
        qx, qy = q.t * math.cos(abs(gap)), q.t * math.sin(abs(gap))
        mx, my = px + u * (qx - px), py + u * (qy - py)
        t = math.hypot(mx, my)
        beta = math.atan2(my, mx)
        return ConePoint(t, CirclePoint(theta_p + math.copysign(beta, gap), L))
    # Broken path through the apex, parametrized by arclength.
    s = u * (p.t + q.t)
    if s <= p.t:
        return ConePoint(p.t - s, CirclePoint(theta_p, L))
    return ConePoint(s - p.t, CirclePoint(theta_q, L))


def cone_segment(L: float, p: ConePoint, q: ConePoint) -> FuncSampler:
    def batch(us: np.ndarray) -> np.ndarray:
        pts = [cone_geodesic_point(L, p, q, float(u)) for u in us]
        return np.array([[pt.t, pt.theta] for pt in pts])

    return FuncSampler(
        func=lambda u: cone_geodesic_point(L, p, q, u), func_array=batch
    )


def cone_triangle(
    oracle: ConeOracle, vertices: Sequence[ConePoint], n: int = 32
) -> TriangleSpec:
    v0, v1, v2 = vertices
    L = oracle.L
    return TriangleSpec(
        vertices=(v0, v1, v2),
        edges=(
            cone_segment(L, v0, v1),
            cone_segment(L, v1, v2),
            cone_segment(L, v2, v0),
        ),
        n=n,
    )


# --------------------------------------------------------------------------
# The half-plane with crushed boundary


@dataclass(frozen=True)
class CrushedPoint:
    """Point of the open half-plane (x > 0) or the crushed point (x = 0).

    All representatives with x = 0 denote the same point; CRUSHED is the
    canonical one.
    """

    x: float
    y: float

    def __post_init__(self) -> None:
        if self.x < 0.0:
            raise ValueError("x must be nonnegative")


CRUSHED = CrushedPoint(0.0, 0.0)


def crushed_distance(p: CrushedPoint, q: CrushedPoint) -> float:
    """min of the straight-line distance and the path through the crushed point.

    The formula min{x1 + x2, Euclidean} is exact for all points, including
    either endpoint crushed (x = 0), where it reduces to the other x.
    """
    return min(
        p.x + q.x,
        math.hypot(p.x - q.x, p.y - q.y),
    )


class CrushedOracle:
    """The crushed half-plane; array form packs a point as a row (x, y)."""

    def distance(self, p: CrushedPoint, q: CrushedPoint) -> float:
        return crushed_distance(p, q)

    def distance_array(self, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
        P = np.asarray(P, float)
        Q = np.asarray(Q, float)
        euclid = np.linalg.norm(P - Q, axis=-1)
        return np.minimum(P[..., 0] + Q[..., 0], euclid)


def crushed_geodesic_point(p: CrushedPoint, q: CrushedPoint, u: float) -> CrushedPoint:
    """Point at parameter u on a geodesic from p to q.

    Straight segment when the Euclidean branch is strictly shorter; otherwise
    (ties included) the horizontal path through the crushed point: x runs down
    to 0, then back up, at constant speed.
    """
    through = p.x + q.x
    euclid = math.hypot(p.x - q.x, p.y - q.y)
    if euclid < through:
        return CrushedPoint(p.x + u * (q.x - p.x), p.y + u * (q.y - p.y))
    s = u * through
    if s <= p.x:
        return CrushedPoint(p.x - s, p.y)
    return CrushedPoint(s - p.x, q.y)


def crushed_segment(p: CrushedPoint, q: CrushedPoint) -> FuncSampler:
    def batch(us: np.ndarray) -> np.ndarray:
        pts = [crushed_geodesic_point(p, q, float(u)) for u in us]
        return np.array([[pt.x, pt.y] for pt in pts])

    return FuncSampler(func=lambda u: crushed_geodesic_point(p, q, u), func_array=batch)


def crushed_triangle(
    v0: CrushedPoint, v1: CrushedPoint, v2: CrushedPoint, n: int = 32
) -> TriangleSpec:
    return TriangleSpec(
        vertices=(v0, v1, v2),
        edges=(
            crushed_segment(v0, v1),
            crushed_segment(v1, v2),
            crushed_segment(v2, v0),
        ),
        n=n,
    )


def crushed_cat_witness() -> tuple[TriangleSpec, CatWitness]:
    """The exact equilateral counterexample triangle and its witness pair.

    Triangle: crushed point, p = (1, -1/2), q = (1, 1/2); all sides have
    length 1.  The midpoints v = (1/2, -1/2) and w = (1/2, 1/2) of the two
    radial sides are at distance 1 in the space (both branches of the metric
    give 1) but at distance 1/2 in the flat comparison triangle.
    """
    p = CrushedPoint(1.0, -0.5)
    q = CrushedPoint(1.0, 0.5)
    # n = 33 puts the midpoint parameter 1/2 on the sample grid.
    tri = crushed_triangle(CRUSHED, p, q, n=33)
    witness = CatWitness(
        edges=(0, 2),
        params=(0.5, 0.5),
        p=CrushedPoint(0.5, -0.5),
        q=CrushedPoint(0.5, 0.5),
        measured=1.0,
        comparison=0.5,
        violation=0.5,
    )
    return tri, witness
