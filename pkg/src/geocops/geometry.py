"""Exact planar primitives used throughout the package.

Distances, closed-segment intersection, circle-circle intersections and the
lens regions they bound, plus small coordinate helpers.  Everything here is
pure and stateless.  Predicates work in floating point with an absolute
tolerance (default 1e-9); ties at exactly the tolerance boundary are treated
as touching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

DEFAULT_TOL = 1e-9


class Point2(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    """Closed planar segment; a == b degenerates to a point."""

    a: Point2
    b: Point2


class DegenerateConfigError(ValueError):
    """Raised when a geometric construction has no valid answer."""


def dist(p, q) -> float:
    """Euclidean distance between two points (anything indexable by 0/1)."""
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b, tol: float) -> bool:
    """True if p lies on the closed segment ab, within absolute distance tol."""
    length = dist(a, b)
    if length <= tol:
        return dist(p, a) <= tol
    # perpendicular distance from p to the line through a, b
    if abs(_cross(a, b, p)) / length > tol:
        return False
    proj = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])
    return -tol * length <= proj <= length * length + tol * length


def segments_intersect(s1: Segment, s2: Segment, tol: float = DEFAULT_TOL) -> bool:
    """Do two closed segments share at least one point?

    Endpoint touching and collinear overlap both count.  Comparisons use the
    absolute tolerance `tol` interpreted as a distance.
    """
    a, b = s1[0], s1[1]
    c, d = s2[0], s2[1]
    len_ab = dist(a, b)
    len_cd = dist(c, d)
    if len_ab <= tol:
        return _on_segment(a, c, d, tol)
    if len_cd <= tol:
        return _on_segment(c, a, b, tol)

    # Signed areas scaled to point-line distances.
    d1 = _cross(c, d, a) / len_cd
    d2 = _cross(c, d, b) / len_cd
    d3 = _cross(a, b, c) / len_ab
    d4 = _cross(a, b, d) / len_ab
    if ((d1 > tol and d2 < -tol) or (d1 < -tol and d2 > tol)) and (
        (d3 > tol and d4 < -tol) or (d3 < -tol and d4 > tol)
    ):
        return True
    # Touching / collinear cases: some endpoint sits on the other segment.
    return (
        _on_segment(a, c, d, tol)
        or _on_segment(b, c, d, tol)
        or _on_segment(c, a, b, tol)
        or _on_segment(d, a, b, tol)
    )


def lens_points(x, y, r: float, tol: float = DEFAULT_TOL) -> tuple[Point2, Point2]:
    """Intersection points of circle(x, r) with circle(y, ||x-y||).

    Requires ||x-y|| > r.  The point on the positive (left) side of the
    directed line x -> y is returned first, which makes the result
    deterministic for golden tests.
    """
    d = dist(x, y)
    if d <= tol:
        raise DegenerateConfigError("lens_points: coincident centers")
    if d <= r + tol:
        raise DegenerateConfigError(
            f"lens_points: requires center distance d > r (got d={d!r}, r={r!r})"
        )
    s = r * r / (2.0 * d)
    h = math.sqrt(max(r * r - s * s, 0.0))
    ex = (y[0] - x[0]) / d
    ey = (y[1] - x[1]) / d
    mx = x[0] + s * ex
    my = x[1] + s * ey
    # (-ey, ex) is the left-hand normal of the direction x -> y.
    p_left = Point2(mx - h * ey, my + h * ex)
    p_right = Point2(mx + h * ey, my - h * ex)
    return p_left, p_right


@dataclass(frozen=True)
class LensRegion:
    """The region of centers z with B(z,r) containing B(x,r) ∩ B(y,||x-y||).

    For ||x-y|| > r this is exactly the lens B(p1,r) ∩ B(p2,r) where p1, p2
    are the boundary intersection points of circle(x,r) and circle(y,||x-y||).
    """

    x: Point2
    y: Point2
    r: float
    p1: Point2
    p2: Point2
    area: float


def make_lens(x, y, r: float, tol: float = DEFAULT_TOL) -> LensRegion:
    p1, p2 = lens_points(x, y, r, tol)
    d = dist(x, y)
    return LensRegion(Point2(*x), Point2(*y), r, p1, p2, lens_area(d, r))


def lens_contains(lens: LensRegion, z, tol: float = DEFAULT_TOL) -> bool:
    """Membership in the lens: within r of both defining points."""
    return dist(z, lens.p1) <= lens.r + tol and dist(z, lens.p2) <= lens.r + tol


def lens_area(d: float, r: float, tol: float = DEFAULT_TOL) -> float:
    """Area r^2 (2a - sin 2a) of the lens, a = arcsin(s/r) with s = r^2/(2d).

    Defined for 0 < r <= d; nonincreasing in d for fixed r.  The boundary
    d == r is allowed (s = r/2, a = pi/6).
    """
    if r <= 0.0:
        raise ValueError(f"lens_area: radius must be positive (got {r!r})")
    if d < r - tol:
        raise ValueError(f"lens_area: requires d >= r (got d={d!r}, r={r!r})")
    s = r * r / (2.0 * d)
    s = min(max(s, 0.0), r)  # guard rounding at d ~ r
    alpha = math.asin(s / r)
    return r * r * (2.0 * alpha - math.sin(2.0 * alpha))


def clamp_to_square(p) -> Point2:
    """Nearest point of [0,1]^2 (coordinate-wise clamp)."""
    return Point2(min(max(p[0], 0.0), 1.0), min(max(p[1], 0.0), 1.0))


def polar_deg(radius: float, theta: float) -> Point2:
    """Cartesian point at (radius : theta) with theta in degrees."""
    t = math.radians(theta)
    return Point2(radius * math.cos(t), radius * math.sin(t))
