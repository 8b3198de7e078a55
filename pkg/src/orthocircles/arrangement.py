"""Arrangement container, validation, nesting structure, and depth labels."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

from .geom import (
    DEFAULT_TOL,
    Circle,
    PairRelation,
    PointLocation,
    RelationKind,
    TangencyError,
    Tolerance,
    point_in_circle,
    relation,
)


class Mode(Enum):
    ORTHOGONAL = "orthogonal"
    ACUTE = "acute"


@dataclass(frozen=True)
class Violation:
    ids: tuple[str, str]
    observed: str
    expected: str


@dataclass(frozen=True)
class ValidationReport:
    mode: Mode
    ok: bool
    violations: tuple[Violation, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Arrangement:
    """Immutable collection of circles sharing one tolerance policy.

    Construction enforces unique ids and rejects duplicate circles (same
    center and radius within tolerance). With ``strict=True`` it also
    rejects tangent pairs outright.
    """

    circles: tuple[Circle, ...]
    tol: Tolerance = DEFAULT_TOL
    strict: bool = field(default=False, compare=False)

    def __post_init__(self):
        ids = [c.id for c in self.circles]
        if len(set(ids)) != len(ids):
            seen: set[str] = set()
            for cid in ids:
                if cid in seen:
                    raise ValueError(f"duplicate circle id {cid!r}")
                seen.add(cid)
        eps = self.tol.rel_eps
        n = len(self.circles)
        for i in range(n):
            a = self.circles[i]
            for j in range(i + 1, n):
                b = self.circles[j]
                scale = max(a.radius, b.radius)
                if (
                    abs(a.radius - b.radius) <= eps * scale
                    and math.hypot(a.center.x - b.center.x, a.center.y - b.center.y)
                    <= eps * scale
                ):
                    raise ValueError(f"circles {a.id!r} and {b.id!r} are identical")
                if self.strict and relation(a, b, self.tol).kind is RelationKind.TANGENT:
                    raise TangencyError(f"circles {a.id!r} and {b.id!r} are tangent")

    def __len__(self) -> int:
        return len(self.circles)

    def __iter__(self) -> Iterator[Circle]:
        return iter(self.circles)

    def by_id(self, cid: str) -> Circle:
        for c in self.circles:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def pairs(self) -> Iterator[tuple[Circle, Circle]]:
        n = len(self.circles)
        for i in range(n):
            for j in range(i + 1, n):
                yield self.circles[i], self.circles[j]


def make_arrangement(
    circles: Iterable[Circle], tol: Tolerance = DEFAULT_TOL, strict: bool = False
) -> Arrangement:
    return Arrangement(tuple(circles), tol, strict)


def pair_relation(arr: Arrangement, a: Circle, b: Circle) -> PairRelation:
    return relation(a, b, arr.tol)


def validate(arr: Arrangement, mode: Mode) -> ValidationReport:
    """Check every crossing pair against the angle constraint of the mode.

    Tangent pairs violate both modes. Concentric nested pairs are legal
    but noted, since nesting machinery treats them specially nowhere.
    """
    from .geom import orthogonal  # local to keep module import cheap

    violations: list[Violation] = []
    notes: list[str] = []
    eps = arr.tol.rel_eps
    for a, b in arr.pairs():
        rel = relation(a, b, arr.tol)
        if rel.kind is RelationKind.TANGENT:
            violations.append(
                Violation((a.id, b.id), "tangent", "touching circles are forbidden")
            )
        elif rel.kind is RelationKind.CROSSING:
            if mode is Mode.ORTHOGONAL:
                if not orthogonal(a, b, arr.tol):
                    violations.append(
                        Violation(
                            (a.id, b.id),
                            f"angle={rel.angle:.9g}",
                            "crossing angle must be pi/2",
                        )
                    )
            else:
                if rel.angle is not None and rel.angle > math.pi / 2.0 + eps:
                    violations.append(
                        Violation(
                            (a.id, b.id),
                            f"angle={rel.angle:.9g}",
                            "crossing angle must be at most pi/2",
                        )
                    )
        elif rel.is_nested:
            d = math.hypot(a.center.x - b.center.x, a.center.y - b.center.y)
            if d <= eps * max(a.radius, b.radius):
                notes.append(f"concentric nested pair ({a.id!r}, {b.id!r})")
    return ValidationReport(mode, not violations, tuple(violations), tuple(notes))


@dataclass(frozen=True)
class DepthLabeling:
    """Depth of each circle: length of the longest chain of pairwise nested
    circles properly inside it. Depth 0 = shallow, otherwise deep."""

    depths: dict[str, int]

    def depth(self, cid: str) -> int:
        return self.depths[cid]

    def shallow_ids(self) -> set[str]:
        return {cid for cid, d in self.depths.items() if d == 0}

    def deep_ids(self) -> set[str]:
        return {cid for cid, d in self.depths.items() if d > 0}

    def max_depth(self) -> int:
        return max(self.depths.values(), default=0)


def contains_properly(outer: Circle, inner: Circle, tol: Tolerance = DEFAULT_TOL) -> bool:
    rel = relation(outer, inner, tol)
    return rel.kind is RelationKind.NESTED_SECOND_IN_FIRST


def depth_labeling(arr: Arrangement) -> DepthLabeling:
    # Containment implies strictly smaller radius, so ascending radius is a
    # topological order of the containment DAG.
    order = sorted(arr.circles, key=lambda c: c.radius)
    depths: dict[str, int] = {}
    for idx, c in enumerate(order):
        best = 0
        for inner in order[:idx]:
            if contains_properly(c, inner, arr.tol):
                best = max(best, depths[inner.id] + 1)
        depths[c.id] = best
    return DepthLabeling(depths)


def is_nonnested(arr: Arrangement) -> bool:
    for a, b in arr.pairs():
        if relation(a, b, arr.tol).is_nested:
            return False
    return True


def centers_outside_other_circles(arr: Arrangement) -> bool:
    """No circle center strictly inside a different circle (nonnested law)."""
    for a in arr.circles:
        for b in arr.circles:
            if a.id != b.id and point_in_circle(a.center, b, arr.tol) is PointLocation.INSIDE:
                return False
    return True
