"""Constant-curvature model planes and comparison triangles.

Everything here works with side lengths only: a comparison triangle is its
three sides plus the curvature chi, never an embedded picture.  Distances
between points on the sides are recovered from the law of cosines for the
appropriate sign of chi, so callers stay chart-free in all three geometries
(hyperbolic chi<0, flat chi=0, spherical chi>0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Arguments to acos/acosh may drift past their domain by roundoff; anything
# within CLAMP_SLACK is clamped, anything worse is a real domain error.
CLAMP_SLACK = 1e-12

SIDE_NAMES = ("a", "b", "c")


class ModelDomainError(ValueError):
    """Inputs outside the model plane's domain (bad lengths/angles)."""


class InadmissibleTriangleError(ValueError):
    """Side lengths that admit no comparison triangle for this chi."""


def _clamp_cos(x: float) -> float:
    """Clamp a should-be-cosine into [-1, 1], rejecting real violations."""
    if x > 1.0:
        if x - 1.0 > CLAMP_SLACK:
            raise ModelDomainError(f"cosine argument {x!r} exceeds 1 beyond slack")
        return 1.0
    if x < -1.0:
        if -1.0 - x > CLAMP_SLACK:
            raise ModelDomainError(f"cosine argument {x!r} below -1 beyond slack")
        return -1.0
    return x


def model_circumference(chi: float) -> float:
    """Circumference of the model plane: 2*pi/sqrt(chi) if chi > 0, else +inf."""
    if chi > 0.0:
        return 2.0 * math.pi / math.sqrt(chi)
    return math.inf


def side_from_angle(chi: float, a: float, b: float, gamma: float) -> float:
    """Third side of a model triangle with sides a, b enclosing angle gamma.

    Law of cosines in the curvature-chi plane, evaluated in half-angle form so
    that nearby points (small gamma, a close to b) lose no precision.  For
    chi > 0 the sides must fit on the sphere (a, b <= pi/sqrt(chi)).
    """
    if a < 0.0 or b < 0.0:
        raise ModelDomainError("side lengths must be nonnegative")
    if not 0.0 <= gamma <= math.pi + CLAMP_SLACK:
        raise ModelDomainError(f"angle {gamma!r} outside [0, pi]")
    gamma = min(gamma, math.pi)
    if a == 0.0:
        return b
    if b == 0.0:
        return a
    sg = math.sin(0.5 * gamma)
    if chi == 0.0:
        # c^2 = (a-b)^2 + 4ab sin^2(gamma/2)
        return math.hypot(a - b, 2.0 * math.sqrt(a * b) * sg)
    if chi < 0.0:
        s = math.sqrt(-chi)
        # cosh(sc) - 1 = 2 sinh^2(s(a-b)/2) + 2 sinh(sa) sinh(sb) sin^2(g/2)
        u = 2.0 * math.sinh(0.5 * s * (a - b)) ** 2 + 2.0 * math.sinh(
            s * a
        ) * math.sinh(s * b) * sg * sg
        return math.log1p(u + math.sqrt(u * (u + 2.0))) / s
    s = math.sqrt(chi)
    half = math.pi / s
    if a > half + CLAMP_SLACK or b > half + CLAMP_SLACK:
        raise ModelDomainError("side exceeds half the model circumference")
    # 1 - cos(sc) = 2 sin^2(s(a-b)/2) + 2 sin(sa) sin(sb) sin^2(gamma/2)
    v = 2.0 * math.sin(0.5 * s * (a - b)) ** 2 + 2.0 * math.sin(s * a) * math.sin(
        s * b
    ) * sg * sg
    if not -CLAMP_SLACK <= v <= 2.0 + CLAMP_SLACK:
        raise ModelDomainError(f"spherical versine {v!r} outside [0, 2]")
    return 2.0 * math.asin(min(1.0, math.sqrt(max(v, 0.0) / 2.0))) / s


def angle_from_sides(chi: float, a: float, b: float, c: float) -> float:
    """Interior angle opposite side c, between the sides of length a and b.

    Inverse of side_from_angle in its last argument; requires a, b > 0 and
    (a, b, c) admissible for chi.
    """
    if a <= 0.0 or b <= 0.0:
        raise ModelDomainError("angle undefined at a degenerate (zero) side")
    # Validates the triangle inequality / perimeter bound as a side effect.
    ModelTriangle(chi, a, b, c)
    if chi == 0.0:
        num = a * a + b * b - c * c
        return math.acos(_clamp_cos(num / (2.0 * a * b)))
    if chi < 0.0:
        s = math.sqrt(-chi)
        num = math.cosh(s * a) * math.cosh(s * b) - math.cosh(s * c)
        den = math.sinh(s * a) * math.sinh(s * b)
        return math.acos(_clamp_cos(num / den))
    s = math.sqrt(chi)
    num = math.cos(s * c) - math.cos(s * a) * math.cos(s * b)
    den = math.sin(s * a) * math.sin(s * b)
    if den == 0.0:
        raise ModelDomainError("spherical side of length pi/sqrt(chi) has no angle")
    return math.acos(_clamp_cos(num / den))


def _side_from_angle_array(
    chi: float, a: "np.ndarray", b: "np.ndarray", gamma: float
) -> "np.ndarray":
    """Vectorized law of cosines for broadcastable arrays of leg lengths.

    Same clamp policy as side_from_angle; gamma is a single shared angle.
    Callers must ensure the chi > 0 length precondition themselves.
    """
    sg = math.sin(0.5 * min(max(gamma, 0.0), math.pi))
    if chi == 0.0:
        return np.hypot(a - b, 2.0 * np.sqrt(a * b) * sg)
    if chi < 0.0:
        s = math.sqrt(-chi)
        u = 2.0 * np.sinh(0.5 * s * (a - b)) ** 2 + (2.0 * sg * sg) * np.sinh(
            s * a
        ) * np.sinh(s * b)
        return np.log1p(u + np.sqrt(u * (u + 2.0))) / s
    s = math.sqrt(chi)
    v = 2.0 * np.sin(0.5 * s * (a - b)) ** 2 + (2.0 * sg * sg) * np.sin(
        s * a
    ) * np.sin(s * b)
    if np.any(v < -CLAMP_SLACK) or np.any(v > 2.0 + CLAMP_SLACK):
        raise ModelDomainError("spherical versine outside [0, 2] beyond slack")
    return 2.0 * np.arcsin(np.minimum(1.0, np.sqrt(np.maximum(v, 0.0) / 2.0))) / s


@dataclass(frozen=True)
class ModelTriangle:
    """A comparison triangle: curvature plus three side lengths.

    Sides are labeled by the opposite vertex: side "a" joins vertices B and C,
    side "b" joins C and A, side "c" joins A and B.  Each side is oriented
    cyclically (a: B->C, b: C->A, c: A->B) for arclength bookkeeping.
    """

    chi: float
    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        sides = (self.a, self.b, self.c)
        if any(s < 0.0 or not math.isfinite(s) for s in sides):
            raise InadmissibleTriangleError(f"bad side lengths {sides}")
        perim = sum(sides)
        for s in sides:
            if s > perim - s + CLAMP_SLACK * max(1.0, perim):
                raise InadmissibleTriangleError(
                    f"triangle inequality fails for sides {sides}"
                )
        if self.chi > 0.0 and perim >= model_circumference(self.chi):
            raise InadmissibleTriangleError(
                f"perimeter {perim} reaches the model circumference"
            )

    def side(self, name: str) -> float:
        if name not in SIDE_NAMES:
            raise KeyError(f"unknown side {name!r}; expected one of {SIDE_NAMES}")
        return getattr(self, name)

    def angle_at(self, vertex: str) -> float:
        """Interior angle at vertex "A", "B" or "C"."""
        opposite = {"A": ("b", "c", "a"), "B": ("c", "a", "b"), "C": ("a", "b", "c")}
        if vertex not in opposite:
            raise KeyError(f"unknown vertex {vertex!r}")
        u, v, w = opposite[vertex]
        return angle_from_sides(self.chi, self.side(u), self.side(v), self.side(w))


# For each unordered pair of distinct sides: (shared vertex, whether the
# first/second side's orientation *ends* at the shared vertex).
_SHARED = {
    ("a", "b"): ("C", True, False),
    ("b", "c"): ("A", True, False),
    ("c", "a"): ("B", True, False),
}


def comparison_point_distance(
    tri: ModelTriangle,
    p1: tuple[str, float],
    p2: tuple[str, float],
) -> float:
    """Distance in the model between two points given as (side, arclength).

    Arclength runs from the side's start in the cyclic orientation
    (a: B->C, b: C->A, c: A->B).  Points on the same side are |s-t| apart;
    otherwise the law of cosines is applied at the vertex the two sides share.
    """
    side1, s = p1
    side2, t = p2
    len1, len2 = tri.side(side1), tri.side(side2)
    if not -CLAMP_SLACK <= s <= len1 + CLAMP_SLACK:
        raise ModelDomainError(f"arclength {s} outside side {side1!r} of length {len1}")
    if not -CLAMP_SLACK <= t <= len2 + CLAMP_SLACK:
        raise ModelDomainError(f"arclength {t} outside side {side2!r} of length {len2}")
    s = min(max(s, 0.0), len1)
    t = min(max(t, 0.0), len2)
    if side1 == side2:
        return abs(s - t)
    if (side1, side2) in _SHARED:
        vertex, first_ends, second_ends = _SHARED[(side1, side2)]
    else:
        vertex, second_ends, first_ends = _SHARED[(side2, side1)]
    d1 = len1 - s if first_ends else s
    d2 = len2 - t if second_ends else t
    if d1 == 0.0:
        return d2
    if d2 == 0.0:
        return d1
    gamma = tri.angle_at(vertex)
    return side_from_angle(tri.chi, d1, d2, gamma)
