"""Circle geometry: predicates, intersections, crossing angles, inversion.

Every comparison is relative to the natural scale of the quantity being
compared, so all predicates are invariant under rigid motion and uniform
scaling of their inputs. Touching circles are a degenerate input:
``relation`` reports them as ``TANGENT`` and the operations that cannot
produce meaningful output for them raise ``TangencyError``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union


class TangencyError(ValueError):
    """Two circles touch; touching circles are outside the model."""


class DegenerateImageError(ValueError):
    """Inversion input collapses onto the mirror center."""


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance driving every geometric comparison."""

    rel_eps: float = 1e-9

    def __post_init__(self):
        if not (0.0 < self.rel_eps < 1e-3):
            raise ValueError(f"rel_eps must be in (0, 1e-3), got {self.rel_eps}")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"coordinates must be finite, got ({self.x}, {self.y})")


def dist(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


@dataclass(frozen=True)
class Circle:
    """A circle with an identifier that is opaque to the geometry layer."""

    id: str
    center: Point
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"radius must be finite and positive, got {self.radius}")

    @staticmethod
    def at(cid: str, x: float, y: float, r: float) -> "Circle":
        return Circle(cid, Point(x, y), r)


@dataclass(frozen=True)
class Line:
    """Infinite line given by a point on it and a unit direction.

    The direction is canonicalized to positive x (positive y when the
    line is vertical) so that equal lines compare equal in tests.
    """

    point: Point
    direction: tuple[float, float]

    def __post_init__(self):
        ux, uy = self.direction
        if abs(math.hypot(ux, uy) - 1.0) > 1e-9:
            raise ValueError(f"direction must be a unit vector, got {self.direction}")


GeneralizedCircle = Union[Circle, Line]


def make_line(point: Point, dx: float, dy: float) -> Line:
    """Build a canonical Line from any nonzero direction vector."""
    norm = math.hypot(dx, dy)
    if norm == 0.0:
        raise ValueError("line direction must be nonzero")
    ux, uy = dx / norm, dy / norm
    if ux < 0.0 or (ux == 0.0 and uy < 0.0):
        ux, uy = -ux, -uy
    return Line(point, (ux, uy))


class RelationKind(Enum):
    DISJOINT_OUTSIDE = "disjoint_outside"
    NESTED_FIRST_IN_SECOND = "nested_first_in_second"
    NESTED_SECOND_IN_FIRST = "nested_second_in_first"
    TANGENT = "tangent"
    CROSSING = "crossing"


@dataclass(frozen=True)
class PairRelation:
    kind: RelationKind
    angle: Optional[float] = None  # crossing angle in (0, pi); set iff CROSSING

    @property
    def is_nested(self) -> bool:
        return self.kind in (
            RelationKind.NESTED_FIRST_IN_SECOND,
            RelationKind.NESTED_SECOND_IN_FIRST,
        )


class PointLocation(Enum):
    INSIDE = "inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


def relation(a: Circle, b: Circle, tol: Tolerance = DEFAULT_TOL) -> PairRelation:
    """Classify a circle pair; tangency is reported, never folded into crossing."""
    d = dist(a.center, b.center)
    rsum = a.radius + b.radius
    if abs(d - rsum) <= tol.rel_eps * rsum:
        return PairRelation(RelationKind.TANGENT)
    rdiff = abs(a.radius - b.radius)
    if abs(d - rdiff) <= tol.rel_eps * max(a.radius, b.radius):
        return PairRelation(RelationKind.TANGENT)
    if d > rsum:
        return PairRelation(RelationKind.DISJOINT_OUTSIDE)
    if d < rdiff:
        if a.radius < b.radius:
            return PairRelation(RelationKind.NESTED_FIRST_IN_SECOND)
        return PairRelation(RelationKind.NESTED_SECOND_IN_FIRST)
    arg = (a.radius * a.radius + b.radius * b.radius - d * d) / (2.0 * a.radius * b.radius)
    arg = max(-1.0, min(1.0, arg))
    return PairRelation(RelationKind.CROSSING, angle=math.pi - math.acos(arg))


def orthogonal(a: Circle, b: Circle, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the circles cross and satisfy the Pythagorean distance identity."""
    rr = a.radius * a.radius + b.radius * b.radius
    dx = a.center.x - b.center.x
    dy = a.center.y - b.center.y
    d2 = dx * dx + dy * dy
    if abs(d2 - rr) > tol.rel_eps * rr:
        return False
    return relation(a, b, tol).kind is RelationKind.CROSSING


def intersection_angle(a: Circle, b: Circle, tol: Tolerance = DEFAULT_TOL) -> Optional[float]:
    """Crossing angle in (0, pi), or None when the circles do not cross."""
    rel = relation(a, b, tol)
    return rel.angle if rel.kind is RelationKind.CROSSING else None


def intersect_points(a: Circle, b: Circle, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    """The two intersection points of a crossing pair, lexicographically sorted.

    Returns [] for disjoint or nested pairs and raises TangencyError when
    the pair touches within tolerance.
    """
    rel = relation(a, b, tol)
    if rel.kind is RelationKind.TANGENT:
        raise TangencyError(f"circles {a.id!r} and {b.id!r} are tangent within tolerance")
    if rel.kind is not RelationKind.CROSSING:
        return []
    d = dist(a.center, b.center)
    ux = (b.center.x - a.center.x) / d
    uy = (b.center.y - a.center.y) / d
    t = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d)
    h2 = a.radius * a.radius - t * t
    h = math.sqrt(max(h2, 0.0))
    mx = a.center.x + t * ux
    my = a.center.y + t * uy
    pts = [Point(mx - h * uy, my + h * ux), Point(mx + h * uy, my - h * ux)]
    pts.sort(key=lambda p: (p.x, p.y))
    return pts


def point_in_circle(p: Point, c: Circle, tol: Tolerance = DEFAULT_TOL) -> PointLocation:
    d = dist(p, c.center)
    if abs(d - c.radius) <= tol.rel_eps * c.radius:
        return PointLocation.ON_BOUNDARY
    return PointLocation.INSIDE if d < c.radius else PointLocation.OUTSIDE


def segment_circle_intersections(
    p: Point, q: Point, c: Circle, tol: Tolerance = DEFAULT_TOL
) -> int:
    """Number of boundary crossings of the closed segment pq with circle c."""
    dx = q.x - p.x
    dy = q.y - p.y
    fa = dx * dx + dy * dy
    if fa == 0.0:
        raise ValueError("segment endpoints must differ")
    ex = p.x - c.center.x
    ey = p.y - c.center.y
    fb = 2.0 * (ex * dx + ey * dy)
    fc = ex * ex + ey * ey - c.radius * c.radius
    disc = fb * fb - 4.0 * fa * fc
    band = tol.rel_eps * (fb * fb + abs(4.0 * fa * fc))
    lo, hi = -tol.rel_eps, 1.0 + tol.rel_eps
    if disc < -band:
        return 0
    if disc <= band:
        t0 = -fb / (2.0 * fa)
        return 1 if lo <= t0 <= hi else 0
    sq = math.sqrt(disc)
    t1 = (-fb - sq) / (2.0 * fa)
    t2 = (-fb + sq) / (2.0 * fa)
    return sum(1 for t in (t1, t2) if lo <= t <= hi)


def invert_point(p: Point, mirror: Circle, tol: Tolerance = DEFAULT_TOL) -> Point:
    """Image of a point under inversion in the mirror circle."""
    o = mirror.center
    dx = p.x - o.x
    dy = p.y - o.y
    d2 = dx * dx + dy * dy
    if math.sqrt(d2) <= tol.rel_eps * mirror.radius:
        raise DegenerateImageError("point coincides with the mirror center")
    s = mirror.radius * mirror.radius / d2
    return Point(o.x + s * dx, o.y + s * dy)


def invert(
    obj: GeneralizedCircle, mirror: Circle, tol: Tolerance = DEFAULT_TOL
) -> GeneralizedCircle:
    """Circle inversion. Involutive, conformal; swaps circles through the
    mirror center with lines.
    """
    o = mirror.center
    rm2 = mirror.radius * mirror.radius
    if isinstance(obj, Line):
        ux, uy = obj.direction
        vx = o.x - obj.point.x
        vy = o.y - obj.point.y
        along = vx * ux + vy * uy
        foot = Point(obj.point.x + along * ux, obj.point.y + along * uy)
        if dist(foot, o) <= tol.rel_eps * mirror.radius:
            return make_line(foot, ux, uy)
        f = invert_point(foot, mirror, tol)
        return Circle(
            "",
            Point((o.x + f.x) / 2.0, (o.y + f.y) / 2.0),
            dist(f, o) / 2.0,
        )
    dvx = obj.center.x - o.x
    dvy = obj.center.y - o.y
    d = math.hypot(dvx, dvy)
    if d + obj.radius <= tol.rel_eps * mirror.radius:
        raise DegenerateImageError("circle collapses onto the mirror center")
    denom = d * d - obj.radius * obj.radius
    if abs(denom) <= tol.rel_eps * max(d * d, obj.radius * obj.radius):
        # Circle through the mirror center: the image is a line through the
        # image of the point diametrically opposite the center.
        far = Point(o.x + dvx * (d + obj.radius) / d, o.y + dvy * (d + obj.radius) / d)
        q = invert_point(far, mirror, tol)
        return make_line(q, -dvy, dvx)
    s = rm2 / denom
    return Circle(obj.id, Point(o.x + s * dvx, o.y + s * dvy), abs(s) * obj.radius)
