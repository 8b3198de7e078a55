"""Planar subdivision of an arrangement into intersection points, circular
arcs, and faces, plus the census of bounded faces by side count.

Faces are traced from the rotation system: outgoing arc ends at every
vertex are sorted by tangent direction and each face walk takes, at the
head of the current half-edge, the rotation predecessor of its twin.
Bounded faces come out counterclockwise (positive enclosed area); every
clockwise cycle is either the unbounded boundary of its connected
component or a hole punched into a face of another component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .arrangement import Arrangement
from .geom import Circle, Point, intersect_points

TWO_PI = 2.0 * math.pi


class NonGenericError(ValueError):
    """Two intersection points coincide within tolerance; the face census
    would be ambiguous."""


@dataclass(frozen=True)
class SubVertex:
    index: int
    point: Point
    circle_ids: tuple[str, str]


@dataclass(frozen=True)
class Arc:
    """Directed support of one circle arc. ``loop`` marks a full circle with
    no intersection points; then the vertex fields are None."""

    index: int
    circle_id: str
    center: Point
    radius: float
    v_start: Optional[int]
    v_end: Optional[int]
    angle_start: float
    angle_sweep: float  # counterclockwise sweep in (0, 2*pi]
    loop: bool


@dataclass(frozen=True)
class Face:
    index: int
    bounded: bool
    cycles: tuple[tuple[int, ...], ...]  # half-edge indices; holes after the outer cycle
    side_count: int
    area: float  # enclosed by the outer cycle; 0 for the unbounded face


@dataclass(frozen=True)
class ArcSubdivision:
    vertices: tuple[SubVertex, ...]
    arcs: tuple[Arc, ...]
    faces: tuple[Face, ...]
    component_count: int

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    @property
    def bounded_faces(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.bounded)

    @property
    def unbounded_face(self) -> Face:
        for f in self.faces:
            if not f.bounded:
                return f
        raise AssertionError("subdivision has no unbounded face")

    def euler_characteristic_holds(self) -> bool:
        """V - E + F = 1 + components, with full-circle loops contributing
        no edge and the unbounded face counted once."""
        v = len(self.vertices)
        e = sum(1 for a in self.arcs if not a.loop)
        f = len(self.faces)
        return v - e + f == 1 + self.component_count


@dataclass(frozen=True)
class FaceCensus:
    by_sides: dict[int, int] = field(compare=False)
    total_bounded: int = 0

    @property
    def digon_count(self) -> int:
        return self.by_sides.get(2, 0)

    @property
    def triangle_count(self) -> int:
        return self.by_sides.get(3, 0)


def _angle(center: Point, p: Point) -> float:
    return math.atan2(p.y - center.y, p.x - center.x)


def _ccw_delta(a0: float, a1: float) -> float:
    d = (a1 - a0) % TWO_PI
    return d if d > 0.0 else TWO_PI


def _arc_area_integral(arc: Arc, forward: bool) -> float:
    """Green's-theorem contribution (integral of x dy) along the half-edge."""
    cx = arc.center.x
    r = arc.radius
    if forward:
        t0, sweep = arc.angle_start, arc.angle_sweep
    else:
        t0, sweep = arc.angle_start + arc.angle_sweep, -arc.angle_sweep
    t1 = t0 + sweep
    return cx * r * (math.sin(t1) - math.sin(t0)) + r * r * (
        sweep / 2.0 + (math.sin(2.0 * t1) - math.sin(2.0 * t0)) / 4.0
    )


def build_subdivision(arr: Arrangement) -> ArcSubdivision:
    """Split every circle at its intersection points and trace the faces.

    Raises NonGenericError when two intersection points on one circle
    coincide within 10 times the relative tolerance (a triple point or a
    near-degenerate crossing), and TangencyError for touching circles.
    """
    tol = arr.tol
    circles = list(arr.circles)
    vertices: list[SubVertex] = []
    on_circle: dict[str, list[tuple[float, int]]] = {c.id: [] for c in circles}
    crossing_adj: dict[str, set[str]] = {c.id: set() for c in circles}

    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            a, b = circles[i], circles[j]
            pts = intersect_points(a, b, tol)
            if not pts:
                continue
            crossing_adj[a.id].add(b.id)
            crossing_adj[b.id].add(a.id)
            for p in pts:
                idx = len(vertices)
                vertices.append(SubVertex(idx, p, (a.id, b.id)))
                on_circle[a.id].append((_angle(a.center, p), idx))
                on_circle[b.id].append((_angle(b.center, p), idx))

    gap_floor = 10.0 * tol.rel_eps
    for c in circles:
        entries = sorted(on_circle[c.id])
        k = len(entries)
        for t in range(k if k > 1 else 0):
            ang0, _v0 = entries[t]
            ang1, _v1 = entries[(t + 1) % k]
            gap = (ang1 - ang0) % TWO_PI
            if gap < gap_floor or TWO_PI - gap < gap_floor:
                raise NonGenericError(
                    f"intersection points on circle {c.id!r} coincide within tolerance"
                )
        on_circle[c.id] = entries

    by_id = {c.id: c for c in circles}
    arcs: list[Arc] = []
    for c in circles:
        entries = on_circle[c.id]
        if not entries:
            arcs.append(Arc(len(arcs), c.id, c.center, c.radius, None, None, 0.0, TWO_PI, True))
            continue
        k = len(entries)
        for t in range(k):
            ang0, v0 = entries[t]
            ang1, v1 = entries[(t + 1) % k]
            sweep = _ccw_delta(ang0, ang1) if k > 1 else TWO_PI
            arcs.append(Arc(len(arcs), c.id, c.center, c.radius, v0, v1, ang0, sweep, False))

    # Half-edge h = 2*arc + (0 forward/ccw, 1 backward/cw); twin(h) = h ^ 1.
    outgoing: dict[int, list[tuple[float, int]]] = {v.index: [] for v in vertices}
    for arc in arcs:
        if arc.loop:
            continue
        start_tangent = arc.angle_start + math.pi / 2.0
        end_tangent = arc.angle_start + arc.angle_sweep - math.pi / 2.0
        outgoing[arc.v_start].append((start_tangent % TWO_PI, 2 * arc.index))
        outgoing[arc.v_end].append((end_tangent % TWO_PI, 2 * arc.index + 1))
    rotation: dict[int, list[int]] = {}
    rot_pos: dict[int, int] = {}
    for vidx, items in outgoing.items():
        items.sort()
        rotation[vidx] = [h for _, h in items]
        for pos, h in enumerate(rotation[vidx]):
            rot_pos[h] = pos

    def head(h: int) -> int:
        arc = arcs[h // 2]
        return arc.v_end if h % 2 == 0 else arc.v_start

    def next_half_edge(h: int) -> int:
        twin = h ^ 1
        ring = rotation[head(h)]
        return ring[(rot_pos[twin] - 1) % len(ring)]

    cycles: list[tuple[list[int], float]] = []
    seen: set[int] = set()
    for arc in arcs:
        if arc.loop:
            continue
        for h0 in (2 * arc.index, 2 * arc.index + 1):
            if h0 in seen:
                continue
            cyc = []
            h = h0
            area = 0.0
            while h not in seen:
                seen.add(h)
                cyc.append(h)
                area += _arc_area_integral(arcs[h // 2], h % 2 == 0)
                h = next_half_edge(h)
            cycles.append((cyc, area))
    for arc in arcs:
        if arc.loop:
            disk = math.pi * arc.radius * arc.radius
            cycles.append(([2 * arc.index], disk))
            cycles.append(([2 * arc.index + 1], -disk))

    components = _component_labels(circles, crossing_adj)
    comp_count = len(set(components.values()))

    positive = [(cyc, area) for cyc, area in cycles if area > 0.0]
    negative = [(cyc, area) for cyc, area in cycles if area <= 0.0]
    if len(negative) != comp_count:
        raise AssertionError("face tracing produced an inconsistent cycle set")

    hole_assignment = _assign_holes(
        arcs, vertices, negative, positive, components, by_id, tol.rel_eps
    )

    faces: list[Face] = []
    unbounded_cycles: list[tuple[int, ...]] = []
    unbounded_sides = 0
    holes_of: dict[int, list[list[int]]] = {}
    for neg_idx, pos_idx in hole_assignment.items():
        cyc = negative[neg_idx][0]
        if pos_idx is None:
            unbounded_cycles.append(tuple(cyc))
            unbounded_sides += len(cyc)
        else:
            holes_of.setdefault(pos_idx, []).append(cyc)
    for pos_idx, (cyc, area) in enumerate(positive):
        extra = holes_of.get(pos_idx, [])
        sides = len(cyc) + sum(len(hc) for hc in extra)
        all_cycles = (tuple(cyc),) + tuple(tuple(hc) for hc in extra)
        faces.append(Face(len(faces), True, all_cycles, sides, area))
    faces.append(Face(len(faces), False, tuple(unbounded_cycles), unbounded_sides, 0.0))

    sub = ArcSubdivision(tuple(vertices), tuple(arcs), tuple(faces), comp_count)
    if not sub.euler_characteristic_holds():
        raise AssertionError("face tracing violated the Euler relation")
    return sub


def _component_labels(
    circles: list[Circle], crossing_adj: dict[str, set[str]]
) -> dict[str, int]:
    label: dict[str, int] = {}
    nxt = 0
    for c in circles:
        if c.id in label:
            continue
        stack = [c.id]
        label[c.id] = nxt
        while stack:
            u = stack.pop()
            for w in crossing_adj[u]:
                if w not in label:
                    label[w] = nxt
                    stack.append(w)
        nxt += 1
    return label


def _cycle_circle_ids(cyc: list[int], arcs: list[Arc]) -> set[str]:
    return {arcs[h // 2].circle_id for h in cyc}


def _cycle_leftmost(cyc: list[int], arcs: list[Arc]) -> Point:
    best: Optional[Point] = None
    for h in cyc:
        arc = arcs[h // 2]
        candidates = []
        if arc.loop:
            candidates.append(Point(arc.center.x - arc.radius, arc.center.y))
        else:
            for ang in (arc.angle_start, arc.angle_start + arc.angle_sweep):
                candidates.append(
                    Point(
                        arc.center.x + arc.radius * math.cos(ang),
                        arc.center.y + arc.radius * math.sin(ang),
                    )
                )
            if _ccw_delta(arc.angle_start, math.pi) <= arc.angle_sweep:
                candidates.append(Point(arc.center.x - arc.radius, arc.center.y))
        for p in candidates:
            if best is None or (p.x, p.y) < (best.x, best.y):
                best = p
    assert best is not None
    return best


def _min_gap_to_other_components(
    comp: int, components: dict[str, int], by_id: dict[str, Circle]
) -> float:
    gap = math.inf
    mine = [by_id[cid] for cid, lab in components.items() if lab == comp]
    others = [by_id[cid] for cid, lab in components.items() if lab != comp]
    for a in mine:
        for b in others:
            d = math.hypot(a.center.x - b.center.x, a.center.y - b.center.y)
            g = max(d - a.radius - b.radius, abs(a.radius - b.radius) - d)
            gap = min(gap, g)
    return gap


def _point_in_cycle(
    p: Point, cyc: list[int], arcs: list[Arc], rel_eps: float
) -> bool:
    """Even-odd test with a cast ray; retries a rotated ray on any
    near-tangential or near-endpoint hit."""
    arc_list = [arcs[h // 2] for h in cyc]
    if len(arc_list) == 1 and arc_list[0].loop:
        a = arc_list[0]
        return math.hypot(p.x - a.center.x, p.y - a.center.y) < a.radius
    for attempt in range(64):
        theta = 0.5613 + attempt * 2.399963229728653  # golden-angle sequence
        ux, uy = math.cos(theta), math.sin(theta)
        count = 0
        ok = True
        for arc in arc_list:
            hits = _ray_arc_hits(p, ux, uy, arc, rel_eps)
            if hits is None:
                ok = False
                break
            count += hits
        if ok:
            return count % 2 == 1
    raise AssertionError("ray casting failed to find a clean direction")


def _ray_arc_hits(
    p: Point, ux: float, uy: float, arc: Arc, rel_eps: float
) -> Optional[int]:
    ex = p.x - arc.center.x
    ey = p.y - arc.center.y
    b = 2.0 * (ex * ux + ey * uy)
    c = ex * ex + ey * ey - arc.radius * arc.radius
    disc = b * b - 4.0 * c
    scale = b * b + abs(4.0 * c)
    if disc < -rel_eps * scale:
        return 0
    if disc <= rel_eps * scale:
        return None  # tangential: unusable direction
    sq = math.sqrt(disc)
    hits = 0
    for t in ((-b - sq) / 2.0, (-b + sq) / 2.0):
        if t <= rel_eps * arc.radius:
            if t >= -rel_eps * arc.radius:
                return None  # ray origin touches the circle
            continue
        ang = math.atan2(p.y + t * uy - arc.center.y, p.x + t * ux - arc.center.x)
        if arc.loop:
            hits += 1
            continue
        offset = _ccw_delta(arc.angle_start, ang) % TWO_PI
        margin = 10.0 * rel_eps
        if offset < margin or abs(offset - arc.angle_sweep) < margin:
            return None  # too close to an arc endpoint
        if offset < arc.angle_sweep:
            hits += 1
    return hits


def _assign_holes(
    arcs_t: tuple[Arc, ...] | list[Arc],
    vertices,
    negative,
    positive,
    components: dict[str, int],
    by_id: dict[str, Circle],
    rel_eps: float,
) -> dict[int, Optional[int]]:
    arcs = list(arcs_t)
    assignment: dict[int, Optional[int]] = {}
    if len(negative) == 1:
        assignment[0] = None
        return assignment
    order = sorted(range(len(positive)), key=lambda k: positive[k][1])
    for neg_idx, (cyc, _area) in enumerate(negative):
        comp = components[next(iter(_cycle_circle_ids(cyc, arcs)))]
        leftmost = _cycle_leftmost(cyc, arcs)
        gap = _min_gap_to_other_components(comp, components, by_id)
        delta = min(gap / 2.0, arcs[cyc[0] // 2].radius / 2.0)
        probe = Point(leftmost.x - delta, leftmost.y)
        target: Optional[int] = None
        for pos_idx in order:
            pcyc, _parea = positive[pos_idx]
            if components[next(iter(_cycle_circle_ids(pcyc, arcs)))] == comp:
                continue
            if _point_in_cycle(probe, pcyc, arcs, rel_eps):
                target = pos_idx
                break
        assignment[neg_idx] = target
    return assignment


def face_census(sub: ArcSubdivision) -> FaceCensus:
    """Bounded faces bucketed by the number of bounding arcs."""
    by_sides: dict[int, int] = {}
    total = 0
    for f in sub.bounded_faces:
        by_sides[f.side_count] = by_sides.get(f.side_count, 0) + 1
        total += 1
    return FaceCensus(dict(sorted(by_sides.items())), total)
