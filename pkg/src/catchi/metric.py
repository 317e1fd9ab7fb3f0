"""Generic metric-space testing: comparison-triangle checks and tangent data.

The tester is deliberately space-agnostic: a space is anything with a
``distance`` function (MetricOracle) and triangles carry their own edge
parametrizations (GeodesicSampler).  cat_test sweeps sampled point pairs on
every pair of distinct edges and flags any pair that is farther apart in the
space than in the comparison triangle of the same side lengths.  This is a
falsifier/validator over a finite grid, not a decision procedure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Protocol, Sequence, runtime_checkable

import numpy as np

from .model import (
    _SHARED,
    InadmissibleTriangleError,
    ModelTriangle,
    _side_from_angle_array,
    angle_from_sides,
    comparison_point_distance,
    side_from_angle,
)

Point = Any


@runtime_checkable
class MetricOracle(Protocol):
    """A metric space presented as a distance function over opaque points."""

    def distance(self, p: Point, q: Point) -> float: ...

    # Optional fast path: implementations may also provide
    #   distance_array(P, Q) -> np.ndarray
    # acting row-wise on stacked point arrays.


@runtime_checkable
class GeodesicSampler(Protocol):
    """A constant-speed edge parametrization over [0, 1]."""

    def eval(self, u: float) -> Point: ...

    # Optional fast path: eval_array(us) -> np.ndarray of stacked points.


@dataclass(frozen=True)
class FuncSampler:
    """Wrap a plain callable (and optional vectorized form) as a sampler."""

    func: Callable[[float], Point]
    func_array: Callable[[np.ndarray], np.ndarray] | None = None

    def eval(self, u: float) -> Point:
        return self.func(u)

    def eval_array(self, us: np.ndarray) -> np.ndarray:
        if self.func_array is not None:
            return self.func_array(us)
        return np.asarray([self.func(float(u)) for u in us])


@dataclass(frozen=True)
class TriangleSpec:
    """Three vertices with edge samplers 0: v0->v1, 1: v1->v2, 2: v2->v0."""

    vertices: tuple[Point, Point, Point]
    edges: tuple[GeodesicSampler, GeodesicSampler, GeodesicSampler]
    n: int = 32


@dataclass(frozen=True)
class CatWitness:
    """A sampled pair violating the comparison inequality.

    ``edges`` are indices into TriangleSpec.edges, ``params`` the sampler
    parameters of the offending points, and violation = measured - comparison.
    """

    edges: tuple[int, int]
    params: tuple[float, float]
    p: Point
    q: Point
    measured: float
    comparison: float
    violation: float


# Edge index -> side label of the comparison triangle.  With vertices
# (x, y, z) =: (A, B, C), edge 0 = xy = side "c", 1 = yz = "a", 2 = zx = "b";
# side orientations in model.py match the edge orientations above.
EDGE_SIDE = ("c", "a", "b")
EDGE_PAIRS = ((0, 1), (0, 2), (1, 2))


def path_length(samples: Sequence[Point], oracle: MetricOracle) -> float:
    """Length of the polygonal chain through ``samples`` (>= 1 point).

    A lower bound for the length of any curve through the samples, converging
    to it as the sampling refines.
    """
    if len(samples) == 0:
        raise ValueError("path_length needs at least one point")
    return float(
        sum(oracle.distance(p, q) for p, q in zip(samples[:-1], samples[1:]))
    )


def _edge_points(edge: GeodesicSampler, us: np.ndarray) -> tuple[Any, bool]:
    if hasattr(edge, "eval_array"):
        return edge.eval_array(us), True
    return [edge.eval(float(u)) for u in us], False


def _pair_distances(
    oracle: MetricOracle, pts1: Any, pts2: Any, n: int, vectorized: bool
) -> np.ndarray:
    """All-pairs distance grid (n x n) between two edge point lists."""
    if vectorized and hasattr(oracle, "distance_array"):
        arr1 = np.asarray(pts1)
        arr2 = np.asarray(pts2)
        ii = np.repeat(np.arange(n), n)
        jj = np.tile(np.arange(n), n)
        return np.asarray(
            oracle.distance_array(arr1[ii], arr2[jj]), dtype=float
        ).reshape(n, n)
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = oracle.distance(pts1[i], pts2[j])
    return out


def _comparison_grid(
    tri: ModelTriangle, side1: str, side2: str, arcs1: np.ndarray, arcs2: np.ndarray
) -> np.ndarray:
    """comparison_point_distance on a full product grid, vectorized."""
    len1, len2 = tri.side(side1), tri.side(side2)
    if len1 == 0.0:
        # Every point of the degenerate side sits at the shared vertex.
        vertex, _, second_ends = _shared_data(side1, side2)
        d2 = len2 - arcs2 if second_ends else arcs2
        return np.broadcast_to(d2[None, :], (len(arcs1), len(arcs2))).copy()
    if len2 == 0.0:
        vertex, first_ends, _ = _shared_data(side1, side2)
        d1 = len1 - arcs1 if first_ends else arcs1
        return np.broadcast_to(d1[:, None], (len(arcs1), len(arcs2))).copy()
    vertex, first_ends, second_ends = _shared_data(side1, side2)
    d1 = len1 - arcs1 if first_ends else arcs1
    d2 = len2 - arcs2 if second_ends else arcs2
    gamma = tri.angle_at(vertex)
    return _side_from_angle_array(tri.chi, d1[:, None], d2[None, :], gamma)


def _shared_data(side1: str, side2: str) -> tuple[str, bool, bool]:
    if (side1, side2) in _SHARED:
        return _SHARED[(side1, side2)]
    vertex, second_ends, first_ends = _SHARED[(side2, side1)]
    return vertex, first_ends, second_ends


def cat_test(
    tri: TriangleSpec,
    chi: float,
    oracle: MetricOracle,
    tolerance: float = 1e-9,
) -> CatWitness | None:
    """Comparison-triangle inequality over a sampled grid; None means pass.

    Edge lengths are measured from the sampler endpoints through the oracle.
    For each of the three unordered pairs of distinct edges, n^2 parameter
    pairs (endpoints included) are compared against the model triangle.
    Returns the maximal-violation CatWitness if any sampled pair exceeds
    ``tolerance``.  An inadmissible side-length triple raises
    InadmissibleTriangleError, which is a different outcome from a witness.
    """
    if tri.n < 2:
        raise ValueError("need at least 2 samples per edge")
    ends = [(e.eval(0.0), e.eval(1.0)) for e in tri.edges]
    for k in range(3):
        va, vb = tri.vertices[k], tri.vertices[(k + 1) % 3]
        if oracle.distance(ends[k][0], va) > 1e-9 or (
            oracle.distance(ends[k][1], vb) > 1e-9
        ):
            raise ValueError(f"edge {k} sampler endpoints disagree with vertices")
    lengths = [oracle.distance(p, q) for p, q in ends]
    sides = dict(zip(EDGE_SIDE, lengths))
    model_tri = ModelTriangle(chi, a=sides["a"], b=sides["b"], c=sides["c"])

    us = np.linspace(0.0, 1.0, tri.n)
    pts = []
    vec = []
    for e in tri.edges:
        p, v = _edge_points(e, us)
        pts.append(p)
        vec.append(v)

    worst: CatWitness | None = None
    for e1, e2 in EDGE_PAIRS:
        measured = _pair_distances(
            oracle, pts[e1], pts[e2], tri.n, vec[e1] and vec[e2]
        )
        comparison = _comparison_grid(
            model_tri, EDGE_SIDE[e1], EDGE_SIDE[e2], us * lengths[e1], us * lengths[e2]
        )
        violation = measured - comparison
        i, j = np.unravel_index(int(np.argmax(violation)), violation.shape)
        v = float(violation[i, j])
        if v > tolerance and (worst is None or v > worst.violation):
            worst = CatWitness(
                edges=(e1, e2),
                params=(float(us[i]), float(us[j])),
                p=tri.edges[e1].eval(float(us[i])),
                q=tri.edges[e2].eval(float(us[j])),
                measured=float(measured[i, j]),
                comparison=float(comparison[i, j]),
                violation=v,
            )
    return worst


class GluingAngleError(ValueError):
    """Gluing configuration outside the straightening lemma (angle sum < pi)."""


@dataclass(frozen=True)
class CombineReport:
    """Straightened (outer) triangle plus the monotonicity check grid.

    ``outer`` has side "a" = the two straightened arms joined, side "c" = the
    first triangle's preserved side, side "b" = the second's.  ``min_gap`` is
    the smallest straightened-minus-glued distance over the sampled grid;
    Alexandrov monotonicity predicts min_gap >= 0 up to roundoff.
    """

    outer: ModelTriangle
    angle1: float
    angle2: float
    angle_sum: float
    n: int
    crossing_samples: int
    min_gap: float
    worst_pair: tuple[str, str, float, float]
    gaps: dict[tuple[str, str], np.ndarray] = field(repr=False, compare=False, default_factory=dict)


_SUCC = {"c": "a", "a": "b", "b": "c"}
_PRED = {"c": "b", "a": "c", "b": "a"}


def _golden_min(f, lo: float, hi: float, iters: int = 80) -> float:
    """Golden-section minimum of a unimodal function on [lo, hi].

    Converges to the minimizer even at a kink (where parabolic-interpolation
    methods stall at sqrt(eps) accuracy in x).
    """
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
        if b - a <= 1e-13 * (1.0 + abs(a)):
            break
    return min(fc, fd, f(0.5 * (a + b)))


class _BoundaryMetric:
    """comparison_point_distance with the corner angles computed once.

    The straightening check evaluates hundreds of thousands of boundary
    distances on the same few triangles; caching the three angles removes the
    repeated admissibility validation from the inner loop.
    """

    def __init__(self, tri: ModelTriangle):
        self.tri = tri
        self._angles: dict[str, float] = {}

    def _angle(self, vertex: str) -> float:
        if vertex not in self._angles:
            self._angles[vertex] = self.tri.angle_at(vertex)
        return self._angles[vertex]

    def dist(self, p: tuple[str, float], q: tuple[str, float]) -> float:
        side1, s = p
        side2, t = q
        if side1 == side2:
            return abs(s - t)
        vertex, first_ends, second_ends = _shared_data(side1, side2)
        d1 = self.tri.side(side1) - s if first_ends else s
        d2 = self.tri.side(side2) - t if second_ends else t
        if d1 == 0.0:
            return d2
        if d2 == 0.0:
            return d1
        return side_from_angle(self.tri.chi, d1, d2, self._angle(vertex))


def alexandrov_combine(
    t1_sides: dict[str, float],
    t2_sides: dict[str, float],
    shared_side_label: str,
    chi: float,
    *,
    n: int = 16,
    crossing_samples: int = 64,
) -> CombineReport:
    """Straighten two model triangles glued along a shared side.

    Both side dicts use model labels; the shared side (label
    ``shared_side_label``, equal length in both) runs from the outer vertex to
    the subdivision vertex, following the side's cyclic orientation.  Each
    triangle contributes its gluing angle at the subdivision vertex; the lemma
    applies when the two angles sum to at least pi, in which case the two arm
    sides straighten into one side of the outer triangle.  The report checks,
    on an n-point grid per side, that every straightened distance is >= the
    distance through the glued configuration (minimized over
    ``crossing_samples`` crossing points on the shared side).

    Raises GluingAngleError when the angle sum is < pi, and
    InadmissibleTriangleError if either input (or the outer triangle) has no
    comparison triangle for chi.
    """
    L = shared_side_label
    if L not in _SUCC:
        raise KeyError(f"unknown side label {L!r}")
    if t1_sides[L] != t2_sides[L]:
        raise ValueError(
            f"shared side length differs: {t1_sides[L]!r} vs {t2_sides[L]!r}"
        )
    tri1 = ModelTriangle(chi, **t1_sides)
    tri2 = ModelTriangle(chi, **t2_sides)
    m = tri1.side(L)
    arm1, arm2 = tri1.side(_SUCC[L]), tri2.side(_SUCC[L])
    pres1, pres2 = tri1.side(_PRED[L]), tri2.side(_PRED[L])

    # Gluing angle of each triangle at the subdivision vertex, i.e. between
    # the shared side and that triangle's arm.  A zero-length arm degenerates
    # the triangle to its shared side: it glues flush, contributing pi.
    def glue_angle(tri: ModelTriangle, arm: float, pres: float) -> float:
        if arm == 0.0:
            return math.pi
        if m == 0.0:
            raise GluingAngleError("zero-length shared side cannot be glued along")
        return angle_from_sides(chi, m, arm, pres)

    angle1 = glue_angle(tri1, arm1, pres1)
    angle2 = glue_angle(tri2, arm2, pres2)
    angle_sum = angle1 + angle2
    if angle_sum < math.pi - 1e-12:
        raise GluingAngleError(
            f"gluing angle sum {angle_sum:.6f} < pi; straightening does not apply"
        )

    outer = ModelTriangle(chi, a=arm1 + arm2, b=pres2, c=pres1)

    # Locate a point of the outer triangle inside the glued configuration.
    # Returns (which triangle, side label there, arclength there).
    def glued_location(side: str, arc: float) -> tuple[int, str, float]:
        if side == "c":  # outer x->y1 = t1's preserved side reversed
            return 0, _PRED[L], tri1.side(_PRED[L]) - arc
        if side == "b":  # outer y2->x = t2's preserved side, same direction
            return 1, _PRED[L], arc
        if arc <= arm1:  # outer y1->y2 passes the subdivision vertex at arm1
            return 0, _SUCC[L], arm1 - arc
        return 1, _SUCC[L], arc - arm1

    cross = np.linspace(0.0, m, crossing_samples) if m > 0 else np.array([0.0])
    metrics = (_BoundaryMetric(tri1), _BoundaryMetric(tri2))
    outer_metric = _BoundaryMetric(outer)

    def glued_distance(loc_p: tuple[int, str, float], loc_q: tuple[int, str, float]) -> float:
        tp, sp, ap = loc_p
        tq, sq, aq = loc_q
        if tp == tq:
            return metrics[tp].dist((sp, ap), (sq, aq))

        def through(v: float) -> float:
            return metrics[tp].dist((sp, ap), (L, v)) + metrics[tq].dist(
                (sq, aq), (L, v)
            )

        # Coarse scan (plus the kink candidates where a mapped point lies on
        # the shared side itself), then golden-section refinement: the grid
        # alone would overestimate the minimum by O(grid step).
        nodes = list(cross)
        if sp == L:
            nodes.append(ap)
        if sq == L:
            nodes.append(aq)
        nodes = sorted(set(float(v) for v in nodes))
        vals = [through(v) for v in nodes]
        k = int(np.argmin(vals))
        best = vals[k]
        if m > 0.0:
            lo = nodes[max(0, k - 1)]
            hi = nodes[min(len(nodes) - 1, k + 1)]
            if hi > lo:
                best = min(best, _golden_min(through, lo, hi))
        return best

    us = np.linspace(0.0, 1.0, n)
    gaps: dict[tuple[str, str], np.ndarray] = {}
    min_gap = math.inf
    worst = ("", "", 0.0, 0.0)
    for s1, s2 in (("c", "a"), ("a", "b"), ("c", "b")):
        l1, l2 = outer.side(s1), outer.side(s2)
        grid = np.empty((n, n))
        for i, u in enumerate(us):
            loc_p = glued_location(s1, u * l1)
            for j, v in enumerate(us):
                loc_q = glued_location(s2, v * l2)
                straight = outer_metric.dist((s1, u * l1), (s2, v * l2))
                grid[i, j] = straight - glued_distance(loc_p, loc_q)
        gaps[(s1, s2)] = grid
        i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
        if grid[i, j] < min_gap:
            min_gap = float(grid[i, j])
            worst = (s1, s2, float(us[i]), float(us[j]))
    return CombineReport(
        outer=outer,
        angle1=angle1,
        angle2=angle2,
        angle_sum=angle_sum,
        n=n,
        crossing_samples=len(cross),
        min_gap=min_gap,
        worst_pair=worst,
        gaps=gaps,
    )


DEFAULT_T_SEQUENCE = tuple(2.0 ** -k for k in range(4, 25))


def tangent_distance_estimate(
    g1: Callable[[float], Point],
    g2: Callable[[float], Point],
    oracle: MetricOracle,
    t_sequence: Sequence[float] = DEFAULT_T_SEQUENCE,
    *,
    with_sequence: bool = False,
):
    """Estimate the tangent-space distance between two unit-speed germs.

    Germs are callables t -> point with g(0) the common basepoint; the
    estimate is max over the tail half of d(g1(t), g2(t))/t for the given
    strictly decreasing positive t_sequence (a limsup surrogate).  With
    ``with_sequence=True`` also returns the full ratio sequence.
    """
    ts = [float(t) for t in t_sequence]
    if not ts or any(t <= 0.0 for t in ts):
        raise ValueError("t_sequence must be nonempty and positive")
    if any(t2 >= t1 for t1, t2 in zip(ts, ts[1:])):
        raise ValueError("t_sequence must be strictly decreasing")
    if oracle.distance(g1(0.0), g2(0.0)) > 0.0:
        raise ValueError("germs have different basepoints")
    ratios = [oracle.distance(g1(t), g2(t)) / t for t in ts]
    est = max(ratios[len(ratios) // 2 :])
    if with_sequence:
        return est, ratios
    return est


@dataclass(frozen=True)
class CenterResult:
    """Best two-leg relay through a sampled obstruction set.

    B is the sampled minimum of d(x, c) + d(c, y); for a finite set it is the
    exact infimum, otherwise an upper bound for it.
    """

    B: float
    center: Point
    achieved: float


def center_and_B(
    oracle: MetricOracle, delta_sample: Iterable[Point], x: Point, y: Point
) -> CenterResult:
    """Minimize d(x,c) + d(c,y) over a finite sample of candidate centers."""
    best = None
    best_val = math.inf
    count = 0
    for c in delta_sample:
        count += 1
        val = oracle.distance(x, c) + oracle.distance(c, y)
        if val < best_val:
            best, best_val = c, val
    if count == 0:
        raise ValueError("empty candidate sample")
    return CenterResult(B=best_val, center=best, achieved=best_val)


@dataclass(frozen=True)
class ProbeReport:
    probe: Point
    radius: float
    passed: int
    failed: int
    worst: CatWitness | None


@dataclass(frozen=True)
class ScanReport:
    probes: list[ProbeReport]
    total_passed: int
    total_failed: int

    @property
    def all_passed(self) -> bool:
        return self.total_failed == 0


def hypothesis_c_scan(
    oracle: MetricOracle,
    delta_sample: Sequence[Point],
    lam: float,
    probes: Sequence[Point],
    chi: float,
    triangle_sampler: Callable[[Point, float, np.random.RandomState], TriangleSpec],
    *,
    triangles_per_probe: int = 50,
    tolerance: float = 1e-9,
    seed: int = 0,
) -> ScanReport:
    """Sample triangles in balls of radius lam * d(probe, Delta) and cat_test.

    A sampling-based necessary check (never a proof): for each probe point the
    distance to the sampled obstruction set scales a ball, the caller-supplied
    triangle_sampler draws triangles inside it, and every triangle runs
    through cat_test.  Probes meeting the obstruction set (distance 0) and an
    empty obstruction sample are rejected.
    """
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    if len(delta_sample) == 0:
        raise ValueError("empty obstruction sample: ball radius would be infinite")
    rng = np.random.RandomState(seed)
    reports: list[ProbeReport] = []
    for x in probes:
        dist = min(oracle.distance(x, c) for c in delta_sample)
        if dist <= 0.0:
            raise ValueError("probe lies in the obstruction set")
        radius = lam * dist
        passed = failed = 0
        worst: CatWitness | None = None
        for _ in range(triangles_per_probe):
            tri = triangle_sampler(x, radius, rng)
            witness = cat_test(tri, chi, oracle, tolerance)
            if witness is None:
                passed += 1
            else:
                failed += 1
                if worst is None or witness.violation > worst.violation:
                    worst = witness
        reports.append(ProbeReport(x, radius, passed, failed, worst))
    return ScanReport(
        probes=reports,
        total_passed=sum(r.passed for r in reports),
        total_failed=sum(r.failed for r in reports),
    )
