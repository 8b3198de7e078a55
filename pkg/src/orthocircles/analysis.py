"""Red/black/green classification and the audit engine that checks every
computationally verifiable structural claim on a concrete arrangement.

Audits never raise on a bad arrangement: failures and inapplicable checks
are report entries. A Fail on any arrangement produced by the generators
in this package means a geometry or tolerance defect.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .arrangement import (
    Arrangement,
    DepthLabeling,
    Mode,
    depth_labeling,
    is_nonnested,
    validate,
)
from .geom import (
    Circle,
    PointLocation,
    RelationKind,
    point_in_circle,
    intersect_points,
    relation,
    segment_circle_intersections,
)
from .graph import build_graph, edge_key, outer_face


class MissingRedError(RuntimeError):
    """Nested circles exist but no depth-1 circle with at most seven deep
    neighbors was found; the externally guaranteed selection failed."""


@dataclass(frozen=True)
class Classification:
    red: str
    black: frozenset[str]
    green: frozenset[str]
    boundary_black: frozenset[str]
    inner_black: frozenset[str]

    @property
    def n_black(self) -> int:
        return len(self.black)


def select_red(arr: Arrangement) -> Optional[Classification]:
    """Pick the depth-1 circle with at most seven deep neighbors (smallest id
    on ties) and classify the rest around it. None when nothing is nested."""
    depths = depth_labeling(arr)
    deep = depths.deep_ids()
    if not deep:
        return None
    deep_circles = [c for c in arr.circles if c.id in deep]
    candidates = []
    for c in deep_circles:
        contains_deep = any(
            d.id != c.id and _properly_contains(c, d, arr) for d in deep_circles
        )
        if contains_deep:
            continue
        neighbors = sum(
            1
            for d in deep_circles
            if d.id != c.id and relation(c, d, arr.tol).kind is RelationKind.CROSSING
        )
        if neighbors <= 7:
            candidates.append(c.id)
    if not candidates:
        raise MissingRedError("no depth-1 circle with at most seven deep neighbors")
    red_id = min(candidates)
    red = arr.by_id(red_id)
    black = frozenset(
        c.id for c in arr.circles if c.id != red_id and _properly_contains(red, c, arr)
    )
    green = frozenset(
        c.id
        for c in arr.circles
        if c.id != red_id
        and c.id not in black
        and relation(c, red, arr.tol).kind is RelationKind.CROSSING
        and any(
            relation(c, arr.by_id(b), arr.tol).kind is RelationKind.CROSSING for b in black
        )
    )
    boundary = _boundary_blacks(arr, black)
    return Classification(red_id, black, green, boundary, black - boundary)


def _properly_contains(outer: Circle, inner: Circle, arr: Arrangement) -> bool:
    return relation(outer, inner, arr.tol).kind is RelationKind.NESTED_SECOND_IN_FIRST


def _boundary_blacks(arr: Arrangement, black: frozenset[str]) -> frozenset[str]:
    from .graph import IntersectionGraph

    members = [c for c in arr.circles if c.id in black]
    edges = set()
    for a, b in itertools.combinations(members, 2):
        if relation(a, b, arr.tol).kind is RelationKind.CROSSING:
            edges.add(edge_key(a.id, b.id))
    sub = IntersectionGraph(
        tuple(c.id for c in members),
        frozenset(edges),
        {c.id: c.center for c in members},
    )
    return frozenset(outer_face(sub))


class AuditStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class AuditEntry:
    tag: str
    status: AuditStatus
    detail: str
    witness: Optional[tuple] = None


@dataclass(frozen=True)
class AuditReport:
    mode: Optional[Mode]
    entries: tuple[AuditEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.status is not AuditStatus.FAIL for e in self.entries)

    def entry(self, tag: str) -> AuditEntry:
        for e in self.entries:
            if e.tag == tag:
                return e
        raise KeyError(tag)


TRIANGLE_GRID_LEVEL = 47  # barycentric lattice: C(46, 2) = 1035 interior points


def audit(arr: Arrangement) -> AuditReport:
    entries: list[AuditEntry] = []
    mode: Optional[Mode] = None
    if validate(arr, Mode.ORTHOGONAL).ok:
        mode = Mode.ORTHOGONAL
    elif validate(arr, Mode.ACUTE).ok:
        mode = Mode.ACUTE

    tags = [
        "center-containment",
        "center-segment-clearance",
        "deep-green",
        "eight-boundary",
        "green-intersection-budget",
        "incidence-bound",
        "nested-pair-orthogonal-neighbors",
        "one-intersection-point",
        "same-point-nesting",
        "segment-to-boundary",
        "small-black-cap",
        "triangle-coverage",
    ]
    if mode is None:
        return AuditReport(
            None,
            tuple(
                AuditEntry(t, AuditStatus.NOT_APPLICABLE, "arrangement fails validation")
                for t in tags
            ),
        )

    nonnested = is_nonnested(arr)
    depths = depth_labeling(arr)
    crossing = _crossing_map(arr)

    if nonnested:
        entries.append(_check_center_containment(arr))
        entries.append(_check_segment_to_boundary(arr, crossing))
        entries.append(_check_clearance(arr, crossing))
    else:
        why = "arrangement has nested circles"
        for t in ("center-containment", "segment-to-boundary", "center-segment-clearance"):
            entries.append(AuditEntry(t, AuditStatus.NOT_APPLICABLE, why))

    ortho_tags = (
        "nested-pair-orthogonal-neighbors",
        "one-intersection-point",
        "same-point-nesting",
        "triangle-coverage",
    )
    if mode is Mode.ORTHOGONAL:
        entries.append(_check_nested_pair_neighbors(arr, crossing))
        entries.append(_check_one_intersection_point(arr, crossing))
        entries.append(_check_same_point_nesting(arr, crossing))
        entries.append(_check_triangle_coverage(arr, crossing))
    else:
        for t in ortho_tags:
            entries.append(AuditEntry(t, AuditStatus.NOT_APPLICABLE, "acute mode"))

    cls_tags = (
        "deep-green",
        "eight-boundary",
        "green-intersection-budget",
        "incidence-bound",
        "small-black-cap",
    )
    cls: Optional[Classification] = None
    cls_reason = "no nested circles, so no classification"
    if mode is Mode.ORTHOGONAL and not nonnested:
        try:
            cls = select_red(arr)
        except MissingRedError as exc:
            cls_reason = str(exc)
    elif mode is Mode.ACUTE:
        cls_reason = "acute mode"
    if cls is None:
        for t in cls_tags:
            entries.append(AuditEntry(t, AuditStatus.NOT_APPLICABLE, cls_reason))
    else:
        entries.append(_check_deep_green(arr, cls, depths, crossing))
        entries.append(_check_eight_boundary(arr, cls, crossing))
        entries.append(_check_green_budget(arr, cls, depths, crossing))
        entries.append(_check_incidence_bound(arr, cls, crossing))
        entries.append(_check_small_black_cap(arr, cls, crossing))

    entries.sort(key=lambda e: e.tag)
    return AuditReport(mode, tuple(entries))


def _crossing_map(arr: Arrangement) -> dict[str, set[str]]:
    out: dict[str, set[str]] = {c.id: set() for c in arr.circles}
    for a, b in arr.pairs():
        if relation(a, b, arr.tol).kind is RelationKind.CROSSING:
            out[a.id].add(b.id)
            out[b.id].add(a.id)
    return out


def _check_center_containment(arr: Arrangement) -> AuditEntry:
    tag = "center-containment"
    for a in arr.circles:
        for b in arr.circles:
            if a.id == b.id:
                continue
            if point_in_circle(a.center, b, arr.tol) is PointLocation.INSIDE:
                return AuditEntry(
                    tag,
                    AuditStatus.FAIL,
                    f"center of {a.id!r} lies inside {b.id!r}",
                    (a.id, b.id, (a.center.x, a.center.y)),
                )
    return AuditEntry(tag, AuditStatus.PASS, f"{len(arr)} centers checked")


def _check_segment_to_boundary(
    arr: Arrangement, crossing: dict[str, set[str]]
) -> AuditEntry:
    tag = "segment-to-boundary"
    checked = 0
    for a in arr.circles:
        pts = []
        for other_id in sorted(crossing[a.id]):
            pts.extend(intersect_points(a, arr.by_id(other_id), arr.tol))
        for b in arr.circles:
            if b.id == a.id:
                continue
            for p in pts:
                checked += 1
                hits = segment_circle_intersections(a.center, p, b, arr.tol)
                if hits > 1:
                    return AuditEntry(
                        tag,
                        AuditStatus.FAIL,
                        f"{b.id!r} crosses a center-to-boundary segment of {a.id!r} "
                        f"{hits} times",
                        (a.id, b.id, (p.x, p.y)),
                    )
    return AuditEntry(tag, AuditStatus.PASS, f"{checked} segments checked")


def _check_clearance(arr: Arrangement, crossing: dict[str, set[str]]) -> AuditEntry:
    tag = "center-segment-clearance"
    checked = 0
    for a, b in arr.pairs():
        if b.id not in crossing[a.id]:
            continue
        for d in arr.circles:
            if d.id in (a.id, b.id):
                continue
            checked += 1
            hits = segment_circle_intersections(a.center, b.center, d, arr.tol)
            if hits != 0:
                return AuditEntry(
                    tag,
                    AuditStatus.FAIL,
                    f"{d.id!r} crosses the center segment of ({a.id!r}, {b.id!r})",
                    (a.id, b.id, d.id),
                )
    return AuditEntry(tag, AuditStatus.PASS, f"{checked} center segments checked")


def _check_nested_pair_neighbors(
    arr: Arrangement, crossing: dict[str, set[str]]
) -> AuditEntry:
    tag = "nested-pair-orthogonal-neighbors"
    pairs = 0
    for a, b in arr.pairs():
        if not relation(a, b, arr.tol).is_nested:
            continue
        pairs += 1
        both = crossing[a.id] & crossing[b.id]
        if len(both) > 2:
            return AuditEntry(
                tag,
                AuditStatus.FAIL,
                f"{len(both)} circles cross both nested circles {a.id!r}, {b.id!r}",
                (a.id, b.id, tuple(sorted(both))),
            )
    return AuditEntry(tag, AuditStatus.PASS, f"{pairs} nested pairs checked")


def _check_one_intersection_point(
    arr: Arrangement, crossing: dict[str, set[str]]
) -> AuditEntry:
    tag = "one-intersection-point"
    checked = 0
    for a, b in arr.pairs():
        if b.id not in crossing[a.id]:
            continue
        pts = intersect_points(a, b, arr.tol)
        for cid in sorted(crossing[a.id] & crossing[b.id]):
            c = arr.by_id(cid)
            inside = sum(
                1 for p in pts if point_in_circle(p, c, arr.tol) is PointLocation.INSIDE
            )
            checked += 1
            if inside != 1:
                return AuditEntry(
                    tag,
                    AuditStatus.FAIL,
                    f"{cid!r} contains {inside} intersection points of "
                    f"({a.id!r}, {b.id!r}), expected exactly 1",
                    (a.id, b.id, cid),
                )
    return AuditEntry(tag, AuditStatus.PASS, f"{checked} triples checked")


def _check_same_point_nesting(
    arr: Arrangement, crossing: dict[str, set[str]]
) -> AuditEntry:
    tag = "same-point-nesting"
    checked = 0
    for a, b in arr.pairs():
        if b.id not in crossing[a.id]:
            continue
        pts = intersect_points(a, b, arr.tol)
        both = sorted(crossing[a.id] & crossing[b.id])
        for p in pts:
            holders = [
                cid
                for cid in both
                if point_in_circle(p, arr.by_id(cid), arr.tol) is PointLocation.INSIDE
            ]
            for u, v in itertools.combinations(holders, 2):
                checked += 1
                if not relation(arr.by_id(u), arr.by_id(v), arr.tol).is_nested:
                    return AuditEntry(
                        tag,
                        AuditStatus.FAIL,
                        f"{u!r} and {v!r} share an intersection point of "
                        f"({a.id!r}, {b.id!r}) but are not nested",
                        (a.id, b.id, u, v),
                    )
    return AuditEntry(tag, AuditStatus.PASS, f"{checked} holder pairs checked")


def _check_triangle_coverage(
    arr: Arrangement, crossing: dict[str, set[str]]
) -> AuditEntry:
    tag = "triangle-coverage"
    triangles = 0
    m = TRIANGLE_GRID_LEVEL
    ids = sorted(c.id for c in arr.circles)
    for ai, bi, ci in itertools.combinations(ids, 3):
        if bi not in crossing[ai] or ci not in crossing[ai] or ci not in crossing[bi]:
            continue
        triangles += 1
        a, b, c = arr.by_id(ai), arr.by_id(bi), arr.by_id(ci)
        for i in range(1, m - 1):
            for j in range(1, m - i):
                k = m - i - j
                if k < 1:
                    continue
                px = (i * a.center.x + j * b.center.x + k * c.center.x) / m
                py = (i * a.center.y + j * b.center.y + k * c.center.y) / m
                covered = any(
                    math.hypot(px - z.center.x, py - z.center.y)
                    <= z.radius * (1.0 + arr.tol.rel_eps)
                    for z in (a, b, c)
                )
                if not covered:
                    return AuditEntry(
                        tag,
                        AuditStatus.FAIL,
                        f"sampled point in the center triangle of "
                        f"({ai!r}, {bi!r}, {ci!r}) is uncovered",
                        (ai, bi, ci, (px, py)),
                    )
    return AuditEntry(
        tag, AuditStatus.PASS, f"{triangles} orthogonal triples sampled on a grid"
    )


def _check_deep_green(
    arr: Arrangement,
    cls: Classification,
    depths: DepthLabeling,
    crossing: dict[str, set[str]],
) -> AuditEntry:
    tag = "deep-green"
    checked = 0
    for gid in sorted(cls.green):
        if not (crossing[gid] & cls.inner_black):
            continue
        checked += 1
        if depths.depth(gid) < 1:
            return AuditEntry(
                tag,
                AuditStatus.FAIL,
                f"green circle {gid!r} crosses an inner black circle but is shallow",
                (gid,),
            )
    return AuditEntry(tag, AuditStatus.PASS, f"{checked} greens touch inner blacks")


def _deep_circles_crossing_red(
    arr: Arrangement, cls: Classification, depths: DepthLabeling, crossing: dict[str, set[str]]
) -> list[str]:
    return sorted(
        cid for cid in crossing[cls.red] if depths.depth(cid) >= 1
    )


def _check_green_budget(
    arr: Arrangement,
    cls: Classification,
    depths: DepthLabeling,
    crossing: dict[str, set[str]],
) -> AuditEntry:
    tag = "green-intersection-budget"
    red = arr.by_id(cls.red)
    members = _deep_circles_crossing_red(arr, cls, depths, crossing)
    inside = 0
    for u, v in itertools.combinations(members, 2):
        cu, cv = arr.by_id(u), arr.by_id(v)
        if relation(cu, cv, arr.tol).kind is not RelationKind.CROSSING:
            continue
        for p in intersect_points(cu, cv, arr.tol):
            if point_in_circle(p, red, arr.tol) is PointLocation.INSIDE:
                inside += 1
    if inside > 8:
        return AuditEntry(
            tag,
            AuditStatus.FAIL,
            f"{inside} intersection points of deep circles inside the red circle",
            (cls.red, tuple(members)),
        )
    return AuditEntry(
        tag,
        AuditStatus.PASS,
        f"{inside} intersection points of {len(members)} deep circles inside red",
    )


def _inner_blacks_with_two_greens(
    cls: Classification, crossing: dict[str, set[str]]
) -> list[str]:
    return sorted(
        bid for bid in cls.inner_black if len(crossing[bid] & cls.green) >= 2
    )


def _check_eight_boundary(
    arr: Arrangement, cls: Classification, crossing: dict[str, set[str]]
) -> AuditEntry:
    tag = "eight-boundary"
    busy = _inner_blacks_with_two_greens(cls, crossing)
    if busy and len(cls.boundary_black) < 8:
        return AuditEntry(
            tag,
            AuditStatus.FAIL,
            f"inner black {busy[0]!r} has two green neighbors but only "
            f"{len(cls.boundary_black)} boundary blacks exist",
            (busy[0], tuple(sorted(cls.boundary_black))),
        )
    return AuditEntry(
        tag,
        AuditStatus.PASS,
        f"{len(busy)} busy inner blacks, {len(cls.boundary_black)} boundary blacks",
    )


def _check_small_black_cap(
    arr: Arrangement, cls: Classification, crossing: dict[str, set[str]]
) -> AuditEntry:
    tag = "small-black-cap"
    if cls.n_black > 11:
        return AuditEntry(
            tag, AuditStatus.PASS, f"{cls.n_black} black circles exceed the small case"
        )
    busy = _inner_blacks_with_two_greens(cls, crossing)
    if len(busy) > 3:
        return AuditEntry(
            tag,
            AuditStatus.FAIL,
            f"{len(busy)} inner blacks with two green neighbors among "
            f"{cls.n_black} blacks",
            tuple(busy),
        )
    return AuditEntry(
        tag, AuditStatus.PASS, f"{len(busy)} busy inner blacks among {cls.n_black} blacks"
    )


def _check_incidence_bound(
    arr: Arrangement, cls: Classification, crossing: dict[str, set[str]]
) -> AuditEntry:
    tag = "incidence-bound"
    g = build_graph(arr)
    incident = sum(1 for u, v in g.edges if u in cls.black or v in cls.black)
    i_count = len(_inner_blacks_with_two_greens(cls, crossing))
    limit = 4 * cls.n_black + i_count - 3
    if incident > limit:
        return AuditEntry(
            tag,
            AuditStatus.FAIL,
            f"{incident} edges incident to {cls.n_black} black circles exceed "
            f"4n_B+i-3 = {limit}",
            (cls.red, incident, limit),
        )
    return AuditEntry(
        tag, AuditStatus.PASS, f"{incident} black-incident edges <= {limit}"
    )
