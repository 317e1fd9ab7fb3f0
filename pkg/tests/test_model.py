"""Model-plane trigonometry: frozen values, round trips, degenerate edges."""

import math

import numpy as np
import pytest

from catchi.model import (
    InadmissibleTriangleError,
    ModelDomainError,
    ModelTriangle,
    angle_from_sides,
    comparison_point_distance,
    model_circumference,
    side_from_angle,
)


def test_circumference():
    assert model_circumference(1.0) == pytest.approx(2.0 * math.pi, abs=1e-15)
    assert model_circumference(4.0) == pytest.approx(math.pi, abs=1e-15)
    assert model_circumference(0.0) == math.inf
    assert model_circumference(-2.5) == math.inf


def test_flat_right_triangle():
    assert side_from_angle(0.0, 3.0, 4.0, math.pi / 2) == pytest.approx(5.0, abs=1e-12)
    assert angle_from_sides(0.0, 3.0, 4.0, 5.0) == pytest.approx(
        math.pi / 2, abs=1e-12
    )
    assert angle_from_sides(0.0, 1.0, 1.0, 1.0) == pytest.approx(
        math.pi / 3, abs=1e-12
    )


def test_zero_side_and_straight_angle():
    assert side_from_angle(-1.0, 2.0, 0.0, 1.2345) == 2.0
    assert side_from_angle(1.0, 0.0, 0.7, 0.1) == 0.7
    # gamma = pi degenerates to concatenation, gamma = 0 to |a - b|.
    assert side_from_angle(-1.0, 1.0, 1.0, math.pi) == pytest.approx(2.0, abs=1e-12)
    assert side_from_angle(0.0, 2.0, 5.0, 0.0) == pytest.approx(3.0, abs=1e-12)
    assert side_from_angle(-1.0, 2.0, 5.0, 0.0) == pytest.approx(3.0, abs=1e-10)
    # Degenerate-by-equality triangle still yields the straight angle.
    assert angle_from_sides(0.0, 1.0, 1.0, 2.0) == pytest.approx(math.pi, abs=1e-12)


def test_spherical_octant():
    h = math.pi / 2
    assert side_from_angle(1.0, h, h, h) == pytest.approx(h, abs=1e-12)
    # With both legs pi/2 the third side equals the enclosed angle.
    for gamma in (0.3, 1.0, 2.0, 3.0):
        assert side_from_angle(1.0, h, h, gamma) == pytest.approx(gamma, abs=1e-12)


def test_equilateral_angles_match_closed_form():
    # Independent closed form for the unit equilateral: cos(angle) =
    # cosh(1)/(1 + cosh(1)) in curvature -1, cos(1)/(1 + cos(1)) in +1.
    want_hyp = math.acos(math.cosh(1.0) / (1.0 + math.cosh(1.0)))
    want_sph = math.acos(math.cos(1.0) / (1.0 + math.cos(1.0)))
    assert angle_from_sides(-1.0, 1.0, 1.0, 1.0) == pytest.approx(want_hyp, abs=1e-12)
    assert angle_from_sides(1.0, 1.0, 1.0, 1.0) == pytest.approx(want_sph, abs=1e-12)
    # Frozen decimals so a regression cannot hide behind the same bug twice.
    assert want_hyp == pytest.approx(0.9187978721780273, abs=1e-12)
    assert want_sph == pytest.approx(1.2123958497745860, abs=1e-12)


def test_round_trip_side_angle():
    rng = np.random.RandomState(20240814)
    for chi in (-2.0, -1.0, 0.0, 0.5, 1.0):
        cap = math.pi / math.sqrt(chi) if chi > 0 else 4.0
        for _ in range(250):
            a = rng.uniform(0.05, 0.45) * cap
            b = rng.uniform(0.05, 0.45) * cap
            gamma = rng.uniform(0.05, math.pi - 0.05)
            c = side_from_angle(chi, a, b, gamma)
            assert angle_from_sides(chi, a, b, c) == pytest.approx(gamma, abs=1e-9)


def test_monotone_in_angle():
    for chi in (-1.0, 0.0, 1.0):
        gammas = [0.1 * k for k in range(1, 31)]
        sides = [side_from_angle(chi, 0.8, 1.1, g) for g in gammas]
        assert all(x < y for x, y in zip(sides, sides[1:]))


def test_small_curvature_matches_flat():
    # The leading correction is O(chi * c^3), so keep sides of order one.
    rng = np.random.RandomState(7)
    for _ in range(100):
        a, b = rng.uniform(0.1, 2.0, size=2)
        gamma = rng.uniform(0.1, 3.0)
        flat = side_from_angle(0.0, a, b, gamma)
        assert side_from_angle(1e-6, a, b, gamma) == pytest.approx(flat, abs=1e-5)
        assert side_from_angle(-1e-6, a, b, gamma) == pytest.approx(flat, abs=1e-5)


def test_triangle_admissibility():
    with pytest.raises(InadmissibleTriangleError):
        ModelTriangle(0.0, 1.0, 1.0, 3.0)
    with pytest.raises(InadmissibleTriangleError):
        ModelTriangle(0.0, -1.0, 1.0, 1.0)
    # Perimeter bound only binds for positive curvature.
    ModelTriangle(0.0, 2.1, 2.1, 2.1)
    ModelTriangle(-1.0, 2.1, 2.1, 2.1)
    with pytest.raises(InadmissibleTriangleError):
        ModelTriangle(1.0, 2.1, 2.1, 2.1)
    with pytest.raises(InadmissibleTriangleError):
        ModelTriangle(4.0, 1.1, 1.1, 1.1)


def test_domain_errors():
    with pytest.raises(ModelDomainError):
        side_from_angle(1.0, 3.2, 1.0, 1.0)  # longer than pi/sqrt(chi)
    with pytest.raises(ModelDomainError):
        side_from_angle(0.0, -1.0, 1.0, 1.0)
    with pytest.raises(ModelDomainError):
        side_from_angle(0.0, 1.0, 1.0, 4.0)  # angle beyond pi
    with pytest.raises(ModelDomainError):
        angle_from_sides(0.0, 0.0, 1.0, 1.0)


def test_triangle_angles():
    tri = ModelTriangle(0.0, 4.0, 5.0, 3.0)  # right angle at B (between c and a)
    assert tri.angle_at("B") == pytest.approx(math.pi / 2, abs=1e-12)
    total = sum(tri.angle_at(v) for v in "ABC")
    assert total == pytest.approx(math.pi, abs=1e-12)
    sph = ModelTriangle(1.0, math.pi / 2, math.pi / 2, math.pi / 2)
    assert sum(sph.angle_at(v) for v in "ABC") == pytest.approx(
        1.5 * math.pi, abs=1e-12
    )


def test_comparison_point_distance_flat():
    # Sides a=4 (B->C), b=5 (C->A), c=3 (A->B); right angle at B, so in
    # coordinates B=(0,0), A=(3,0), C=(0,4).
    tri = ModelTriangle(0.0, 4.0, 5.0, 3.0)
    # s=1 along c from A is (2,0); t=1 along a from B is (0,1).
    assert comparison_point_distance(tri, ("c", 1.0), ("a", 1.0)) == pytest.approx(
        math.sqrt(5.0), abs=1e-12
    )
    # Same side: plain arclength gap.
    assert comparison_point_distance(tri, ("b", 1.0), ("b", 3.5)) == pytest.approx(
        2.5, abs=1e-15
    )
    # Coinciding vertices reached from different sides.
    assert comparison_point_distance(tri, ("c", 0.0), ("b", 5.0)) == 0.0
    assert comparison_point_distance(tri, ("c", 3.0), ("a", 0.0)) == 0.0
    # Endpoint against opposite side endpoint: full side length.
    assert comparison_point_distance(tri, ("c", 0.0), ("a", 0.0)) == pytest.approx(
        3.0, abs=1e-15
    )


def test_comparison_point_distance_spherical():
    tri = ModelTriangle(1.0, math.pi / 2, math.pi / 2, math.pi / 2)
    # Midpoints of the two sides meeting at a right angle: cos d = 1/2.
    mid = math.pi / 4
    assert comparison_point_distance(tri, ("a", mid), ("b", mid)) == pytest.approx(
        math.pi / 3, abs=1e-12
    )


def test_comparison_point_distance_validates_arclength():
    tri = ModelTriangle(0.0, 4.0, 5.0, 3.0)
    with pytest.raises(ModelDomainError):
        comparison_point_distance(tri, ("c", 3.5), ("a", 1.0))
    with pytest.raises(KeyError):
        comparison_point_distance(tri, ("d", 0.0), ("a", 1.0))
