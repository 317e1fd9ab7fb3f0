"""Tests for the generic tester: grids, straightening, tangent estimates."""

import math

import numpy as np
import pytest

from catchi.metric import (
    CatWitness,
    GluingAngleError,
    TriangleSpec,
    alexandrov_combine,
    cat_test,
    center_and_B,
    hypothesis_c_scan,
    path_length,
    tangent_distance_estimate,
)
from catchi.model import InadmissibleTriangleError
from catchi.spaces import (
    CRUSHED,
    ConeOracle,
    CrushedOracle,
    CrushedPoint,
    PlaneOracle,
    cone_triangle,
    plane_triangle,
    segment,
)

PLANE = PlaneOracle()


def test_path_length_basics():
    assert path_length([(0.0, 0.0), (3.0, 4.0)], PLANE) == pytest.approx(5.0)
    assert path_length([(2.0, 2.0)], PLANE) == 0.0
    with pytest.raises(ValueError):
        path_length([], PLANE)


def test_path_length_semicircle():
    ts = np.linspace(0.0, math.pi, 10_000)
    pts = [(math.cos(t), math.sin(t)) for t in ts]
    assert path_length(pts, PLANE) == pytest.approx(math.pi, abs=1e-6)


def test_cat_plane_equality_case():
    rng = np.random.RandomState(42)
    for _ in range(500):
        verts = rng.uniform(-1.0, 1.0, size=(3, 2))
        tri = plane_triangle(*verts, n=16)
        assert cat_test(tri, 0.0, PLANE, 1e-9) is None


def test_cat_plane_fails_against_negative_chi():
    # The flat plane is not nonpositively curved relative to a hyperbolic
    # comparison: midpoints are strictly farther apart than the model allows.
    tri = plane_triangle((0.0, 0.0), (2.0, 0.0), (1.0, 1.7), n=33)
    witness = cat_test(tri, -1.0, PLANE, 1e-9)
    assert isinstance(witness, CatWitness)
    assert witness.violation > 1e-3
    assert witness.measured > witness.comparison


def test_cat_monotone_in_chi_on_cones():
    # Passing at some chi implies passing at every larger chi.
    oracle = ConeOracle(4.0 * math.pi)
    rng = np.random.RandomState(3)
    chis = (-1.0, -0.25, 0.0, 0.5)
    for _ in range(20):
        ts = rng.uniform(0.3, 1.2, size=3)
        thetas = rng.uniform(0.0, 4.0 * math.pi, size=3)
        tri = cone_triangle(
            oracle, [oracle.point(t, th) for t, th in zip(ts, thetas)], n=16
        )
        passed = []
        for chi in chis:
            try:
                passed.append(cat_test(tri, chi, oracle, 1e-9) is None)
            except InadmissibleTriangleError:
                passed.append(None)  # no comparison triangle at this chi
        seen_pass = False
        for ok in passed:
            if ok is None:
                continue
            if seen_pass:
                assert ok, f"monotonicity broken along {chis}: {passed}"
            seen_pass = seen_pass or ok


def test_cat_test_validates_inputs():
    tri = plane_triangle((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), n=1)
    with pytest.raises(ValueError):
        cat_test(tri, 0.0, PLANE)
    bad = TriangleSpec(
        vertices=((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)),
        edges=(
            segment((0.0, 0.0), (1.0, 0.0)),
            segment((1.0, 0.0), (0.0, 1.0)),
            segment((0.0, 1.0), (0.5, 0.5)),  # wrong endpoint
        ),
    )
    with pytest.raises(ValueError):
        cat_test(bad, 0.0, PLANE)


def test_cat_test_scalar_fallback_agrees():
    # An oracle without distance_array must give the identical verdict.
    class ScalarPlane:
        def distance(self, p, q):
            return math.hypot(p[0] - q[0], p[1] - q[1])

    tri = plane_triangle((0.0, 0.0), (1.1, 0.2), (0.3, 0.9), n=12)
    assert cat_test(tri, 0.0, ScalarPlane(), 1e-9) is None
    assert cat_test(tri, -1.0, ScalarPlane(), 1e-9).violation == pytest.approx(
        cat_test(tri, -1.0, PLANE, 1e-9).violation, abs=1e-12
    )


def test_combine_flat_cevian_recovers_outer_triangle():
    # Split the triangle y=(-1,0), z=(1,0), x=(0,1) by the cevian to w=(0,0):
    # both halves are right triangles and glue back with angle sum exactly pi.
    s2 = math.sqrt(2.0)
    rep = alexandrov_combine(
        {"c": 1.0, "a": 1.0, "b": s2}, {"c": 1.0, "a": 1.0, "b": s2}, "c", 0.0
    )
    assert rep.angle_sum == pytest.approx(math.pi, abs=1e-12)
    assert rep.outer.a == pytest.approx(2.0)
    assert rep.outer.b == pytest.approx(s2)
    assert rep.outer.c == pytest.approx(s2)
    assert rep.min_gap == pytest.approx(0.0, abs=1e-9)
    assert rep.min_gap >= -1e-10


def test_combine_rejects_acute_gluing():
    # Two unit equilateral triangles glued along a side meet it at angle
    # pi/3 + pi/3 = 2*pi/3 < pi, so the straightening lemma does not apply.
    eq = {"a": 1.0, "b": 1.0, "c": 1.0}
    with pytest.raises(GluingAngleError):
        alexandrov_combine(eq, eq, "c", 0.0)


def test_combine_bent_configuration_is_monotone():
    # Obtuse gluing angles on both sides: straightening strictly increases
    # some distances and decreases none.
    pres = math.sqrt(1.0 + 1.0 - 2.0 * math.cos(2.0))  # legs 1,1, angle 2
    t = {"c": 1.0, "a": 1.0, "b": pres}
    rep = alexandrov_combine(t, t, "c", 0.0, n=12, crossing_samples=96)
    assert rep.angle_sum == pytest.approx(4.0, abs=1e-12)
    assert rep.min_gap >= -1e-10
    assert max(g.max() for g in rep.gaps.values()) > 1e-3
    # Same configuration in curved models keeps monotonicity.
    for chi in (-1.0, 0.3):
        rep = alexandrov_combine(t, t, "c", chi, n=10, crossing_samples=64)
        assert rep.min_gap >= -1e-10


def test_combine_degenerate_second_triangle():
    t1 = {"c": 1.0, "a": 1.5, "b": 2.0}
    t2 = {"c": 1.0, "a": 0.0, "b": 1.0}  # zero arm: glues flush
    rep = alexandrov_combine(t1, t2, "c", 0.0)
    assert sorted((rep.outer.a, rep.outer.b, rep.outer.c)) == pytest.approx(
        sorted(t1.values())
    )
    assert rep.min_gap >= -1e-10


def test_combine_input_validation():
    with pytest.raises(ValueError):
        alexandrov_combine(
            {"c": 1.0, "a": 1.0, "b": 1.5}, {"c": 1.1, "a": 1.0, "b": 1.5}, "c", 0.0
        )
    with pytest.raises(KeyError):
        alexandrov_combine(
            {"c": 1.0, "a": 1.0, "b": 1.5}, {"c": 1.0, "a": 1.0, "b": 1.5}, "x", 0.0
        )


def test_tangent_estimate_euclidean_rays():
    for theta in (math.pi / 6, math.pi / 3, math.pi / 2, math.pi):
        g1 = lambda t: (t, 0.0)
        g2 = lambda t: (t * math.cos(theta), t * math.sin(theta))
        est = tangent_distance_estimate(g1, g2, PLANE)
        assert est == pytest.approx(2.0 * math.sin(theta / 2.0), abs=1e-8)
    assert tangent_distance_estimate(g1, g1, PLANE) == 0.0


def test_tangent_estimate_validation():
    g1 = lambda t: (t, 0.0)
    g2 = lambda t: (1.0 + t, 0.0)
    with pytest.raises(ValueError):
        tangent_distance_estimate(g1, g2, PLANE)
    with pytest.raises(ValueError):
        tangent_distance_estimate(g1, g1, PLANE, t_sequence=[0.5, 0.5])
    with pytest.raises(ValueError):
        tangent_distance_estimate(g1, g1, PLANE, t_sequence=[])


def test_tangent_estimate_reports_sequence():
    g1 = lambda t: (t, 0.0)
    g2 = lambda t: (0.0, t)
    est, seq = tangent_distance_estimate(g1, g2, PLANE, with_sequence=True)
    assert len(seq) == 21
    assert est == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_center_and_B():
    res = center_and_B(PLANE, [(0.0, 0.0)], (1.0, 0.0), (-1.0, 0.0))
    assert res.B == pytest.approx(2.0)
    assert res.center == (0.0, 0.0)
    assert res.achieved >= res.B - 1e-15

    grid = [(x, 0.0) for x in np.linspace(-2.0, 2.0, 401)]
    res = center_and_B(PLANE, grid, (0.0, 1.0), (0.0, -1.0))
    assert res.B == pytest.approx(2.0, abs=1e-4)
    assert abs(res.center[0]) <= 0.01

    oracle = ConeOracle(4.0 * math.pi)
    apex = oracle.point(0.0, 0.0)
    res = center_and_B(
        oracle, [apex], oracle.point(1.0, 0.0), oracle.point(2.0, 7.0)
    )
    assert res.B == pytest.approx(3.0)

    with pytest.raises(ValueError):
        center_and_B(PLANE, [], (0.0, 0.0), (1.0, 1.0))


def _cone_ball_sampler(oracle):
    def sample(probe, radius, rng):
        pts = []
        for _ in range(3):
            t = probe.t + rng.uniform(-0.45, 0.45) * radius
            dth = rng.uniform(-0.45, 0.45) * radius / probe.t
            pts.append(oracle.point(t, probe.theta + dth))
        from catchi.spaces import cone_triangle

        return cone_triangle(oracle, pts, n=12)

    return sample


def test_hypothesis_c_scan_branched_plane():
    oracle = ConeOracle(4.0 * math.pi)
    apex = oracle.point(0.0, 0.0)
    probes = [oracle.point(t, th) for t, th in zip((1.0, 1.5, 2.0), (0.0, 2.0, 9.0))]
    rep = hypothesis_c_scan(
        oracle,
        [apex],
        0.5,
        probes,
        0.0,
        _cone_ball_sampler(oracle),
        triangles_per_probe=20,
        seed=11,
    )
    assert rep.all_passed
    assert rep.total_passed == 60


def test_hypothesis_c_scan_crushed():
    oracle = CrushedOracle()

    def sampler(probe, radius, rng):
        from catchi.spaces import crushed_triangle

        pts = []
        for _ in range(3):
            dx, dy = rng.uniform(-0.45, 0.45, size=2) * radius
            pts.append(CrushedPoint(probe.x + dx, probe.y + dy))
        return crushed_triangle(*pts, n=12)

    probes = [CrushedPoint(1.0, 0.0), CrushedPoint(0.5, 2.0), CrushedPoint(2.0, -1.0)]
    rep = hypothesis_c_scan(
        oracle, [CRUSHED], 0.5, probes, 0.0, sampler, triangles_per_probe=20, seed=5
    )
    assert rep.all_passed


def test_hypothesis_c_scan_rejects_bad_input():
    oracle = CrushedOracle()
    sampler = lambda probe, radius, rng: None
    with pytest.raises(ValueError):
        hypothesis_c_scan(oracle, [], 0.5, [CrushedPoint(1.0, 0.0)], 0.0, sampler)
    with pytest.raises(ValueError):
        hypothesis_c_scan(oracle, [CRUSHED], 0.5, [CRUSHED], 0.0, sampler)
    with pytest.raises(ValueError):
        hypothesis_c_scan(
            oracle, [CRUSHED], -1.0, [CrushedPoint(1.0, 0.0)], 0.0, sampler
        )
