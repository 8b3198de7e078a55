"""Constructors for the arrangements studied here: wheels of circles,
nested wheel stacks, their nonnested variant, the triangle-cell
augmentation, acute perturbations, and seeded random nonnested instances.

A wheel is a ring of equal satellite circles whose centers sit on an
invisible orbit circle, every neighboring pair orthogonal, plus one hub
circle orthogonal to all satellites. Stacked wheels grow geometrically by
the ratio that makes satellites of adjacent wheels orthogonal as well.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .arrangement import Arrangement, Mode, make_arrangement, validate
from .geom import (
    DEFAULT_TOL,
    Circle,
    Point,
    RelationKind,
    Tolerance,
    dist,
    intersect_points,
    invert,
    invert_point,
    orthogonal,
    relation,
)


class DomainError(ValueError):
    """Construction parameters outside the valid domain."""


class AugmentationError(RuntimeError):
    """A corner circle could not be shrunk into isolation."""


class PerturbationError(RuntimeError):
    """Acute perturbation kept producing tangent or nested pairs."""


class GenerationError(RuntimeError):
    """Random generation exceeded its rejection budget."""


@dataclass(frozen=True)
class WheelGeometry:
    """Closed-form constants for a stack of nested wheels.

    For wheel i (1-based), satellites have radius ``satellite_radii[i-1]``
    and centers on the orbit of radius ``orbit_radii[i-1]``; the hub has
    radius ``hub_radii[i-1]``. Odd wheels are rotated half a step so each
    satellite meets two satellites of each neighboring wheel.
    """

    wheels: int
    satellites: int
    alpha: float
    orbit_radii: tuple[float, ...]
    satellite_radii: tuple[float, ...]
    hub_radii: tuple[float, ...]

    def angular_offset(self, i: int) -> float:
        return math.pi / self.satellites if i % 2 == 1 else 0.0

    def satellite_center(self, i: int, j: int) -> Point:
        ang = 2.0 * math.pi * j / self.satellites + self.angular_offset(i)
        d = self.orbit_radii[i - 1]
        return Point(d * math.cos(ang), d * math.sin(ang))


def growth_ratio(a: int) -> float:
    """Scale factor between consecutive wheels with a satellites each."""
    if a < 5:
        raise DomainError(f"need at least 5 satellites per wheel, got {a}")
    c1 = math.cos(math.pi / a)
    c2 = math.cos(2.0 * math.pi / a)
    c4 = math.cos(4.0 * math.pi / a)
    return (math.sqrt(c2 - c4) + math.sqrt(2.0) * c1) / (math.sqrt(2.0) * c2)


def wheel_geometry(x: int, a: int) -> WheelGeometry:
    """Evaluate all wheel-stack constants for x wheels of a satellites."""
    if x < 1:
        raise DomainError(f"need at least one wheel, got {x}")
    alpha = growth_ratio(a)
    sin_a = math.sin(math.pi / a)
    orbit_unit = 1.0 / (math.sqrt(2.0) * sin_a)
    hub_unit = math.sqrt(1.0 / (2.0 * sin_a * sin_a) - 1.0)
    # neighboring unit satellites must sit sqrt(2) apart for a right-angle
    # crossing; guards the trig evaluation
    spacing = 2.0 * orbit_unit * orbit_unit * (1.0 - math.cos(2.0 * math.pi / a))
    if abs(spacing - 2.0) > 1e-12:
        raise AssertionError(f"satellite spacing identity violated at a={a}")
    sat = [1.0]
    for _ in range(x - 1):
        sat.append(sat[-1] * alpha)
    return WheelGeometry(
        wheels=x,
        satellites=a,
        alpha=alpha,
        orbit_radii=tuple(s * orbit_unit for s in sat),
        satellite_radii=tuple(sat),
        hub_radii=tuple(s * hub_unit for s in sat),
    )


def make_wheel(
    a: int, scale: float = 1.0, rotation: float = 0.0, tol: Tolerance = DEFAULT_TOL
) -> Arrangement:
    """One wheel: a satellites on an orbit plus the hub, centered on the origin."""
    if scale <= 0.0:
        raise DomainError(f"scale must be positive, got {scale}")
    geo = wheel_geometry(1, a)
    circles = [Circle.at("hub-1", 0.0, 0.0, scale * geo.hub_radii[0])]
    d = scale * geo.orbit_radii[0]
    for j in range(1, a + 1):
        ang = 2.0 * math.pi * j / a + rotation
        circles.append(Circle.at(f"sat-1-{j}", d * math.cos(ang), d * math.sin(ang), scale))
    return make_arrangement(circles, tol, strict=True)


def make_nested_wheels(x: int, a: int, tol: Tolerance = DEFAULT_TOL) -> Arrangement:
    """x concentric wheels of a satellites each; satellites of adjacent wheels
    cross orthogonally, hubs stay inside their own wheel."""
    geo = wheel_geometry(x, a)
    circles = []
    for i in range(1, x + 1):
        circles.append(Circle.at(f"hub-{i}", 0.0, 0.0, geo.hub_radii[i - 1]))
        for j in range(1, a + 1):
            c = geo.satellite_center(i, j)
            circles.append(Circle(f"sat-{i}-{j}", c, geo.satellite_radii[i - 1]))
    return make_arrangement(circles, tol, strict=True)


def make_nonnested_wheels(x: int, tol: Tolerance = DEFAULT_TOL) -> Arrangement:
    """The 5-satellite wheel stack with every hub but the innermost removed:
    nonnested, with the extremal edge count 3n-8 for its n = 5x+1 circles."""
    full = make_nested_wheels(x, 5, tol)
    keep = [c for c in full.circles if not (c.id.startswith("hub-") and c.id != "hub-1")]
    return make_arrangement(keep, tol, strict=True)


def augment_triangles(arr: Arrangement) -> Arrangement:
    """Add one small circle over every intersection point, orthogonal to the
    two circles crossing there and disjoint from everything else.

    The placement inverts the crossing pair in a unit circle centered on the
    other intersection point, which turns the pair into two lines through the
    image of the target point; a circle centered on that image crosses both
    lines orthogonally, and inverting back yields the corner circle. Its
    pre-image radius is halved until the result crosses only the two parents.
    """
    tol = arr.tol
    originals = list(arr.circles)
    added: list[Circle] = []
    work: list[tuple[Circle, Circle, Point, Point]] = []
    for a, b in arr.pairs():
        pts = intersect_points(a, b, tol)
        if len(pts) == 2:
            work.append((a, b, pts[0], pts[1]))
            work.append((a, b, pts[1], pts[0]))

    all_points = [p for _, _, p, _ in work]
    for k, (a, b, p, other) in enumerate(work):
        target = math.inf
        for c in originals:
            if c.id in (a.id, b.id):
                continue
            target = min(target, abs(dist(p, c.center) - c.radius))
        for q in all_points:
            if q is not p:
                target = min(target, dist(p, q))
        if not math.isfinite(target):
            target = min(a.radius, b.radius)
        target /= 4.0

        mirror = Circle("mirror", other, 1.0)
        q_img = invert_point(p, mirror, tol)
        dq = dist(q_img, other)
        # pre-image radius whose back-inverted circle has radius ~= target
        rho = (-1.0 + math.sqrt(1.0 + 4.0 * target * target * dq * dq)) / (2.0 * target)
        rho = min(rho, dq / 2.0)
        floor = tol.rel_eps * dq
        small = None
        while rho > floor:
            cand = invert(Circle(f"small-{k + 1}", q_img, rho), mirror, tol)
            if isinstance(cand, Circle) and _isolated(cand, a, b, originals, added, tol):
                small = cand
                break
            rho /= 2.0
        if small is None:
            raise AugmentationError(
                f"no isolating radius for the corner circle at ({p.x:.6g}, {p.y:.6g})"
            )
        added.append(small)
    return make_arrangement(originals + added, tol, strict=True)


def _isolated(
    cand: Circle,
    a: Circle,
    b: Circle,
    originals: list[Circle],
    added: list[Circle],
    tol: Tolerance,
) -> bool:
    """True when cand crosses its two parents orthogonally and stays off the
    boundary of everything else (outside it, or properly inside it; corner
    circles at points covered by a third circle end up nested in that one)."""
    if not (orthogonal(cand, a, tol) and orthogonal(cand, b, tol)):
        return False
    allowed = (RelationKind.DISJOINT_OUTSIDE, RelationKind.NESTED_FIRST_IN_SECOND)
    for c in originals:
        if c.id in (a.id, b.id):
            continue
        if relation(cand, c, tol).kind not in allowed:
            return False
    for c in added:
        if relation(cand, c, tol).kind not in allowed:
            return False
    return True


def perturb_acute(arr: Arrangement, seed: int) -> Arrangement:
    """Shrink every radius by an independent factor from [0.97, 1.0).

    Originally orthogonal crossings become strictly acute; pairs may stop
    crossing. Factor vectors producing a tangent pair, or turning a crossing
    pair nested, are resampled (at most 100 attempts).
    """
    rng = random.Random(seed)
    before = {
        (a.id, b.id): relation(a, b, arr.tol).kind for a, b in arr.pairs()
    }
    for _ in range(100):
        factors = [rng.uniform(0.97, 1.0) for _ in arr.circles]
        circles = [
            Circle(c.id, c.center, c.radius * f) for c, f in zip(arr.circles, factors)
        ]
        cand = make_arrangement(circles, arr.tol)
        report = validate(cand, Mode.ACUTE)
        if not report.ok:
            continue
        ok = True
        for a, b in cand.pairs():
            rel = relation(a, b, cand.tol)
            if before[(a.id, b.id)] is RelationKind.CROSSING and rel.is_nested:
                ok = False
                break
        if ok:
            return cand
    raise PerturbationError("no valid factor vector after 100 attempts")


def make_random_nonnested(n: int, seed: int, tol: Tolerance = DEFAULT_TOL) -> Arrangement:
    """Seeded nonnested orthogonal arrangement grown by rejection sampling.

    Each new circle is pinned orthogonal to one uniformly chosen existing
    circle (center distance d beyond the parent radius, new radius
    sqrt(d^2 - r^2)) and resampled while it touches, nests with, or crosses
    anything else non-orthogonally.
    """
    if n < 1:
        raise DomainError(f"need at least one circle, got {n}")
    rng = random.Random(seed)
    circles = [Circle.at("c0", 0.0, 0.0, 1.0)]
    margin = 1e-6
    for k in range(1, n):
        rejections = 0
        while True:
            parent = circles[rng.randrange(len(circles))]
            ratio = rng.uniform(1.1, 1.9)
            d = parent.radius * ratio
            ang = rng.uniform(0.0, 2.0 * math.pi)
            center = Point(
                parent.center.x + d * math.cos(ang), parent.center.y + d * math.sin(ang)
            )
            radius = math.sqrt(d * d - parent.radius * parent.radius)
            cand = Circle(f"c{k}", center, radius)
            if _acceptable(cand, parent, circles, margin):
                circles.append(cand)
                break
            rejections += 1
            if rejections > 1000:
                raise GenerationError(f"rejection budget exhausted while placing circle {k}")
    return make_arrangement(circles, tol, strict=True)


def _acceptable(
    cand: Circle, parent: Circle, circles: list[Circle], margin: float
) -> bool:
    for c in circles:
        d = dist(cand.center, c.center)
        rsum = cand.radius + c.radius
        rdiff = abs(cand.radius - c.radius)
        if c.id == parent.id:
            # orthogonal by construction; keep clear of both tangencies
            if d > rsum * (1.0 - margin) or d < rdiff * (1.0 + margin):
                return False
            continue
        if d < rsum * (1.0 + margin):
            return False
    return True
