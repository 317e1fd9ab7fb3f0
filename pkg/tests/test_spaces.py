"""Exact-formula spaces: circles, cones/branched planes, crushed half-plane."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catchi.metric import cat_test, tangent_distance_estimate
from catchi.spaces import (
    CRUSHED,
    CirclePoint,
    CircleOracle,
    ConeOracle,
    ConePoint,
    CrushedOracle,
    CrushedPoint,
    circle_distance,
    circle_triangle,
    cone_distance,
    cone_geodesic_point,
    cone_triangle,
    crushed_cat_witness,
    crushed_distance,
    crushed_geodesic_point,
    crushed_triangle,
)

TWO_PI = 2.0 * math.pi


def test_circle_distance():
    assert circle_distance(CirclePoint(0.0, TWO_PI), CirclePoint(math.pi, TWO_PI)) == (
        pytest.approx(math.pi)
    )
    assert circle_distance(
        CirclePoint(0.0, TWO_PI), CirclePoint(1.5 * math.pi, TWO_PI)
    ) == pytest.approx(0.5 * math.pi)
    assert circle_distance(CirclePoint(0.0), CirclePoint(5.0)) == 5.0
    with pytest.raises(ValueError):
        circle_distance(CirclePoint(0.0, 1.0), CirclePoint(0.0, 2.0))


def test_cone_distance_basics():
    oracle = ConeOracle(TWO_PI)
    assert oracle.distance(
        oracle.point(1.0, 0.0), oracle.point(1.0, math.pi)
    ) == pytest.approx(2.0)
    assert oracle.distance(
        oracle.point(1.0, 0.0), oracle.point(1.0, math.pi / 2)
    ) == pytest.approx(math.sqrt(2.0))
    assert oracle.distance(
        oracle.point(1.5, 2.0), oracle.point(0.0, 99.0)
    ) == pytest.approx(1.5)


def test_cone_L_2pi_is_the_plane():
    oracle = ConeOracle(TWO_PI)
    rng = np.random.RandomState(123)
    for _ in range(1000):
        t1, t2 = rng.uniform(0.0, 3.0, size=2)
        a1, a2 = rng.uniform(0.0, TWO_PI, size=2)
        want = math.hypot(
            t1 * math.cos(a1) - t2 * math.cos(a2), t1 * math.sin(a1) - t2 * math.sin(a2)
        )
        got = oracle.distance(oracle.point(t1, a1), oracle.point(t2, a2))
        assert got == pytest.approx(want, abs=1e-12)


def test_cone_geodesic_point_cases():
    L = TWO_PI
    p, q = ConePoint(1.0, CirclePoint(0.0, L)), ConePoint(1.0, CirclePoint(math.pi / 2, L))
    mid = cone_geodesic_point(L, p, q, 0.5)
    assert mid.t == pytest.approx(math.sqrt(2.0) / 2.0)
    assert mid.theta == pytest.approx(math.pi / 4.0)

    # Angular separation exactly pi: broken path through the apex.
    r = ConePoint(2.0, CirclePoint(math.pi, L))
    at_apex = cone_geodesic_point(L, p, r, 1.0 / 3.0)  # arclength 1 = t_p
    assert at_apex.t == pytest.approx(0.0)

    # Wraparound on a two-sheeted cover: min(3pi, 4pi - 3pi) = pi.
    L4 = 2.0 * TWO_PI
    p4 = ConePoint(1.0, CirclePoint(0.0, L4))
    q4 = ConePoint(1.0, CirclePoint(3.0 * math.pi, L4))
    assert cone_geodesic_point(L4, p4, q4, 0.5).t == pytest.approx(0.0)

    with pytest.raises(ValueError):
        cone_geodesic_point(L, ConePoint(0.0, CirclePoint(0.0, L)),
                            ConePoint(0.0, CirclePoint(1.0, L)), 0.5)


def test_cone_geodesic_constant_speed():
    rng = np.random.RandomState(7)
    for L in (TWO_PI, 2.0 * TWO_PI, 0.9 * TWO_PI, math.inf):
        oracle = ConeOracle(L)
        span = 10.0 if math.isinf(L) else L
        for _ in range(25):
            p = oracle.point(rng.uniform(0.1, 2.0), rng.uniform(0.0, span))
            q = oracle.point(rng.uniform(0.1, 2.0), rng.uniform(0.0, span))
            total = oracle.distance(p, q)
            us = rng.uniform(0.0, 1.0, size=6)
            for u, v in zip(us[:3], us[3:]):
                d = oracle.distance(
                    cone_geodesic_point(L, p, q, float(u)),
                    cone_geodesic_point(L, p, q, float(v)),
                )
                assert d == pytest.approx(abs(u - v) * total, abs=1e-10)


def test_branched_cover_dichotomy_small():
    rng = np.random.RandomState(2024)
    for L, expect_pass in ((TWO_PI, True), (2 * TWO_PI, True), (0.9 * TWO_PI, False)):
        oracle = ConeOracle(L)
        if expect_pass:
            for _ in range(25):
                pts = [
                    oracle.point(rng.uniform(0.2, 2.0), rng.uniform(0.0, L))
                    for _ in range(3)
                ]
                assert cat_test(cone_triangle(oracle, pts, n=16), 0.0, oracle) is None
        else:
            pts = [oracle.point(1.0, th) for th in (0.0, L / 3.0, 2.0 * L / 3.0)]
            witness = cat_test(cone_triangle(oracle, pts, n=64), 0.0, oracle)
            assert witness is not None and witness.violation > 1e-3


def test_circle_chi1_matches_cone_verdict():
    # Spread triangle on a short circle: fails CAT(1), like its cone at chi=0.
    L = 0.9 * TWO_PI
    tri = circle_triangle([0.0, L / 3.0, 2.0 * L / 3.0], L, n=64)
    oracle = CircleOracle(L)
    witness = cat_test(tri, 1.0, oracle, 1e-9)
    assert witness is not None and witness.violation > 1e-3

    # On circumference >= 2pi every admissible triangle is clustered (span
    # < pi, isometric to an interval) and passes, like the cone.
    rng = np.random.RandomState(5)
    for L in (TWO_PI, 1.5 * TWO_PI):
        oracle = CircleOracle(L)
        for _ in range(25):
            base = rng.uniform(0.0, L)
            offs = rng.uniform(0.0, math.pi * 0.98, size=2)
            tri = circle_triangle([base, base + offs[0], base + offs[1]], L, n=16)
            assert cat_test(tri, 1.0, oracle, 1e-9) is None


def test_crushed_distance_values():
    assert crushed_distance(CrushedPoint(1.0, 0.0), CrushedPoint(1.0, 3.0)) == 2.0
    assert crushed_distance(CrushedPoint(1.0, 0.0), CrushedPoint(1.0, 1.0)) == 1.0
    assert crushed_distance(CrushedPoint(2.5, -7.0), CRUSHED) == 2.5
    assert crushed_distance(CRUSHED, CrushedPoint(0.0, 5.0)) == 0.0
    with pytest.raises(ValueError):
        CrushedPoint(-0.1, 0.0)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.floats(0.0, 50.0, allow_nan=False),
            st.floats(-50.0, 50.0, allow_nan=False),
        ),
        min_size=3,
        max_size=3,
    )
)
def test_crushed_triangle_inequality_hypothesis(pts):
    p, q, r = (CrushedPoint(x, y) for x, y in pts)
    assert crushed_distance(p, r) <= crushed_distance(p, q) + crushed_distance(
        q, r
    ) + 1e-12


def test_crushed_triangle_inequality_bulk():
    rng = np.random.RandomState(99)
    P = np.column_stack([rng.uniform(0, 10, 100_000), rng.uniform(-10, 10, 100_000)])
    Q = np.column_stack([rng.uniform(0, 10, 100_000), rng.uniform(-10, 10, 100_000)])
    R = np.column_stack([rng.uniform(0, 10, 100_000), rng.uniform(-10, 10, 100_000)])
    oracle = CrushedOracle()
    dpr = oracle.distance_array(P, R)
    dpq = oracle.distance_array(P, Q)
    dqr = oracle.distance_array(Q, R)
    assert np.all(dpr <= dpq + dqr + 1e-12)


def test_crushed_geodesic_point():
    mid = crushed_geodesic_point(CrushedPoint(1.0, 0.0), CrushedPoint(1.0, 3.0), 0.5)
    assert mid.x == 0.0  # arclength 1 along the through-0 path
    mid = crushed_geodesic_point(CrushedPoint(1.0, 0.0), CrushedPoint(1.0, 1.0), 0.5)
    assert (mid.x, mid.y) == (1.0, 0.5)
    mid = crushed_geodesic_point(CrushedPoint(2.0, 5.0), CRUSHED, 0.5)
    assert (mid.x, mid.y) == (1.0, 5.0)


def test_crushed_witness_exact():
    tri, witness = crushed_cat_witness()
    oracle = CrushedOracle()
    assert witness.measured == 1.0
    assert witness.comparison == 0.5
    assert witness.violation == 0.5
    assert oracle.distance(witness.p, witness.q) == 1.0
    found = cat_test(tri, 0.0, oracle, 1e-9)
    assert found is not None
    assert found.violation == pytest.approx(0.5, abs=1e-12)
    assert found.params == pytest.approx((0.5, 0.5))
    assert set(found.edges) == set(witness.edges)


def test_crushed_edge_at_crushed_point_passes():
    # Degenerate triangles with one edge collapsed to the crushed point are
    # radial-plus-segment configurations: they satisfy the flat comparison.
    rng = np.random.RandomState(31)
    for _ in range(30):
        x, y = rng.uniform(0.1, 3.0), rng.uniform(-3.0, 3.0)
        tri = crushed_triangle(CRUSHED, CRUSHED, CrushedPoint(x, y), n=16)
        assert cat_test(tri, 0.0, CrushedOracle(), 1e-9) is None


def test_crushed_tangent_germs():
    oracle = CrushedOracle()
    g1 = lambda s: CrushedPoint(s, 0.25)
    g2 = lambda s: CrushedPoint(s, 0.75)
    assert tangent_distance_estimate(g1, g2, oracle) == pytest.approx(2.0, abs=1e-6)
    g3 = lambda s: CrushedPoint(s, 0.25)
    assert tangent_distance_estimate(g1, g3, oracle) == 0.0
