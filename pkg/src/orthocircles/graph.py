"""Intersection graphs of circle arrangements and their embedded drawings.

The drawing places every vertex at its circle's center. Crossing
detection, the outer-face walk, the forbidden-subgraph scan, and the
exhaustive small-graph bound live here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .arrangement import Arrangement, Mode, is_nonnested, validate
from .geom import Point, intersect_points


class NotPlaneError(ValueError):
    """The straight-line drawing has crossings; no outer face walk exists."""


@dataclass(frozen=True)
class IntersectionGraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]  # pairs stored sorted
    positions: dict[str, Point] = field(compare=False)

    def __post_init__(self):
        vset = set(self.vertices)
        for u, v in self.edges:
            if u == v or u not in vset or v not in vset:
                raise ValueError(f"bad edge ({u!r}, {v!r})")
        for v in self.vertices:
            if v not in self.positions:
                raise ValueError(f"vertex {v!r} has no position")

    def neighbors(self, v: str) -> set[str]:
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def edge_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


def build_graph(arr: Arrangement) -> IntersectionGraph:
    """Edge iff the two circles cross. Tangent pairs abort with TangencyError."""
    edges = set()
    for a, b in arr.pairs():
        if len(intersect_points(a, b, arr.tol)) == 2:
            edges.add(edge_key(a.id, b.id))
    return IntersectionGraph(
        tuple(c.id for c in arr.circles),
        frozenset(edges),
        {c.id: c.center for c in arr.circles},
    )


def edge_count(g: IntersectionGraph) -> int:
    return len(g.edges)


def degree_sequence(g: IntersectionGraph) -> list[int]:
    adj = g.adjacency()
    return sorted(len(adj[v]) for v in g.vertices)


@dataclass(frozen=True)
class Crossing:
    edges: tuple[tuple[str, str], tuple[str, str]]
    point: Point
    degenerate: bool = False  # collinear overlap or endpoint touch


@dataclass(frozen=True)
class CrossingReport:
    crossings: tuple[Crossing, ...]

    @property
    def count(self) -> int:
        return len(self.crossings)


def _segment_params(p1: Point, p2: Point, q1: Point, q2: Point):
    """Intersection point of the two supporting lines, or None if parallel."""
    rx, ry = p2.x - p1.x, p2.y - p1.y
    sx, sy = q2.x - q1.x, q2.y - q1.y
    den = rx * sy - ry * sx
    if den == 0.0:
        return None
    qx, qy = q1.x - p1.x, q1.y - p1.y
    t = (qx * sy - qy * sx) / den
    return Point(p1.x + t * rx, p1.y + t * ry)


def crossing_pairs(g: IntersectionGraph, rel_eps: float = 1e-9) -> CrossingReport:
    """All pairs of endpoint-disjoint edges whose open segments cross.

    Near-degenerate contacts (collinear overlap, an endpoint on the open
    interior of another edge) are reported as crossings with a degenerate
    flag rather than dropped, so a violated noncrossing claim cannot hide
    behind rounding.
    """
    edges = sorted(g.edges)
    m = len(edges)
    if m < 2:
        return CrossingReport(())
    p1 = np.array([[g.positions[e[0]].x, g.positions[e[0]].y] for e in edges])
    p2 = np.array([[g.positions[e[1]].x, g.positions[e[1]].y] for e in edges])
    lo = np.minimum(p1, p2)
    hi = np.maximum(p1, p2)
    lengths = np.hypot(p2[:, 0] - p1[:, 0], p2[:, 1] - p1[:, 1])

    def orient(a1, a2, b):
        # cross((a2 - a1), (b - a1)) for all i, j
        return (a2[:, None, 0] - a1[:, None, 0]) * (b[None, :, 1] - a1[:, None, 1]) - (
            a2[:, None, 1] - a1[:, None, 1]
        ) * (b[None, :, 0] - a1[:, None, 0])

    o1 = orient(p1, p2, p1)  # edge i vs q1 of edge j
    o2 = orient(p1, p2, p2)
    # distance scales for the orientation bands
    d11 = np.hypot(p1[None, :, 0] - p1[:, None, 0], p1[None, :, 1] - p1[:, None, 1])
    d12 = np.hypot(p2[None, :, 0] - p1[:, None, 0], p2[None, :, 1] - p1[:, None, 1])
    band1 = rel_eps * lengths[:, None] * np.maximum(d11, 1e-300)
    band2 = rel_eps * lengths[:, None] * np.maximum(d12, 1e-300)

    bbox_overlap = (
        (lo[:, None, 0] <= hi[None, :, 0])
        & (lo[None, :, 0] <= hi[:, None, 0])
        & (lo[:, None, 1] <= hi[None, :, 1])
        & (lo[None, :, 1] <= hi[:, None, 1])
    )
    straddle_j = ((o1 > band1) & (o2 < -band2)) | ((o1 < -band1) & (o2 > band2))
    near_i = (np.abs(o1) <= band1) | (np.abs(o2) <= band2)
    cand = bbox_overlap & (
        (straddle_j & straddle_j.T) | ((near_i | near_i.T) & bbox_overlap)
    )
    idx_i, idx_j = np.nonzero(np.triu(cand, k=1))

    found: list[Crossing] = []
    for i, j in zip(idx_i.tolist(), idx_j.tolist()):
        ei, ej = edges[i], edges[j]
        if set(ei) & set(ej):
            continue
        c = _classify_pair(
            g.positions[ei[0]], g.positions[ei[1]], g.positions[ej[0]], g.positions[ej[1]], rel_eps
        )
        if c is not None:
            pt, degen = c
            found.append(Crossing((ei, ej), pt, degen))
    return CrossingReport(tuple(found))


def _classify_pair(a1: Point, a2: Point, b1: Point, b2: Point, rel_eps: float):
    """Exact per-pair classification used on the vectorized prefilter output."""

    def cross(o: Point, p: Point, q: Point) -> float:
        return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x)

    la = math.hypot(a2.x - a1.x, a2.y - a1.y)
    lb = math.hypot(b2.x - b1.x, b2.y - b1.y)
    o1 = cross(a1, a2, b1)
    o2 = cross(a1, a2, b2)
    o3 = cross(b1, b2, a1)
    o4 = cross(b1, b2, a2)
    band_a = rel_eps * la * max(math.hypot(b1.x - a1.x, b1.y - a1.y),
                                math.hypot(b2.x - a1.x, b2.y - a1.y), 1e-300)
    band_b = rel_eps * lb * max(math.hypot(a1.x - b1.x, a1.y - b1.y),
                                math.hypot(a2.x - b1.x, a2.y - b1.y), 1e-300)
    zeros = [abs(o1) <= band_a, abs(o2) <= band_a, abs(o3) <= band_b, abs(o4) <= band_b]
    if all(zeros):
        # collinear: report midpoint of the projected overlap, if any
        ux, uy = (a2.x - a1.x) / la, (a2.y - a1.y) / la
        t1 = (b1.x - a1.x) * ux + (b1.y - a1.y) * uy
        t2 = (b2.x - a1.x) * ux + (b2.y - a1.y) * uy
        tlo, thi = min(t1, t2), max(t1, t2)
        lo = max(0.0, tlo)
        hi = min(la, thi)
        if lo < hi - rel_eps * la:
            tm = (lo + hi) / 2.0
            return Point(a1.x + tm * ux, a1.y + tm * uy), True
        return None
    if not any(zeros):
        if (o1 > 0) != (o2 > 0) and (o3 > 0) != (o4 > 0):
            pt = _segment_params(a1, a2, b1, b2)
            if pt is not None:
                return pt, False
        return None
    # One endpoint sits on the other segment's line: a touch counts as a
    # crossing when it lands strictly inside the open segment.
    for pt, on_seg, seg in (
        (b1, zeros[0], (a1, a2, la)),
        (b2, zeros[1], (a1, a2, la)),
        (a1, zeros[2], (b1, b2, lb)),
        (a2, zeros[3], (b1, b2, lb)),
    ):
        if not on_seg:
            continue
        s1, s2, sl = seg
        t = ((pt.x - s1.x) * (s2.x - s1.x) + (pt.y - s1.y) * (s2.y - s1.y)) / (sl * sl)
        if rel_eps < t < 1.0 - rel_eps:
            return pt, True
    return None


def _components(g: IntersectionGraph) -> list[list[str]]:
    adj = g.adjacency()
    seen: set[str] = set()
    comps: list[list[str]] = []
    for v in g.vertices:
        if v in seen:
            continue
        stack = [v]
        seen.add(v)
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _walk_component_boundary(
    g: IntersectionGraph, comp: list[str]
) -> tuple[list[str], list[str]]:
    """Counterclockwise boundary walk of one component.

    Returns (unique vertices in first-visit order, full closed walk). The
    walk starts at the lexicographically smallest position and repeatedly
    takes the smallest counterclockwise turn from the reversed incoming
    direction, which keeps the unbounded face on the right.
    """
    adj = g.adjacency()
    pos = g.positions
    start = min(comp, key=lambda v: (pos[v].x, pos[v].y, v))
    if not adj[start]:
        return [start], [start]

    def angle(u: str, w: str) -> float:
        return math.atan2(pos[w].y - pos[u].y, pos[w].x - pos[u].x)

    back = math.pi  # virtual predecessor lies due left of the start vertex
    v = start
    first_edge: Optional[tuple[str, str]] = None
    order: list[str] = []
    seen_order: set[str] = set()
    walk: list[str] = []
    steps = 0
    while steps <= 2 * len(g.edges) + 4:
        steps += 1
        best = None
        best_turn = None
        for w in adj[v]:
            turn = (angle(v, w) - back) % (2.0 * math.pi)
            if turn == 0.0:
                turn = 2.0 * math.pi  # returning along the incoming edge is the last resort
            if best_turn is None or turn < best_turn:
                best_turn = turn
                best = w
        assert best is not None
        if first_edge is None:
            first_edge = (v, best)
        elif (v, best) == first_edge:
            break
        walk.append(v)
        if v not in seen_order:
            seen_order.add(v)
            order.append(v)
        back = angle(best, v)
        v = best
    return order, walk


def _winding(poly: list[Point], p: Point) -> int:
    wn = 0
    n = len(poly)
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if a.y <= p.y:
            if b.y > p.y and (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) > 0:
                wn += 1
        elif b.y <= p.y and (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < 0:
            wn -= 1
    return wn


def outer_face(g: IntersectionGraph) -> list[str]:
    """Vertices on the boundary of the unbounded face, in counterclockwise
    walk order. Raises NotPlaneError when the drawing has crossings. For a
    disconnected drawing, components enclosed by another component's
    boundary are dropped and the remaining walks are concatenated."""
    if crossing_pairs(g).count > 0:
        raise NotPlaneError("drawing has edge crossings")
    comps = _components(g)
    walks = [_walk_component_boundary(g, comp) for comp in comps]
    if len(walks) == 1:
        return walks[0][0]
    pos = g.positions
    keep: list[list[str]] = []
    for wi, (order_i, _) in enumerate(walks):
        probe = pos[order_i[0]]
        enclosed = False
        for wj, (_, closed_j) in enumerate(walks):
            if wi == wj or len(closed_j) < 3:
                continue
            if _winding([pos[v] for v in closed_j], probe) != 0:
                enclosed = True
                break
        if not enclosed:
            keep.append(order_i)
    keep.sort(key=lambda w: (pos[w[0]].x, pos[w[0]].y, w[0]))
    return [v for walk in keep for v in walk]


@dataclass(frozen=True)
class ForbiddenWitness:
    kind: str  # "K4" or "induced_C4"
    vertices: tuple[str, str, str, str]


def find_forbidden(g: IntersectionGraph) -> Optional[ForbiddenWitness]:
    """First K4 or induced C4, or None.

    Scans every vertex pair with common-neighborhood bitmasks, which covers
    every 4-subset: a K4 contains an adjacent pair whose common neighborhood
    holds an adjacent pair, an induced C4 contains a non-adjacent diagonal
    pair whose common neighborhood holds a non-adjacent pair.
    """
    verts = list(g.vertices)
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    masks = [0] * n
    for u, v in g.edges:
        masks[index[u]] |= 1 << index[v]
        masks[index[v]] |= 1 << index[u]
    for i in range(n):
        for j in range(i + 1, n):
            common = masks[i] & masks[j]
            if bin(common).count("1") < 2:
                continue
            members = [k for k in range(n) if common >> k & 1]
            adjacent = masks[i] >> j & 1
            for a, b in itertools.combinations(members, 2):
                pair_adj = masks[a] >> b & 1
                if adjacent and pair_adj:
                    return ForbiddenWitness("K4", (verts[i], verts[j], verts[a], verts[b]))
                if not adjacent and not pair_adj:
                    return ForbiddenWitness(
                        "induced_C4", (verts[i], verts[a], verts[j], verts[b])
                    )
    return None


@dataclass(frozen=True)
class SmallGraph:
    """Simple graph on up to 7 labeled vertices, adjacency as a bitmask over
    the n(n-1)/2 vertex pairs in lexicographic order."""

    n: int
    mask: int

    def pairs(self) -> list[tuple[int, int]]:
        return list(itertools.combinations(range(self.n), 2))

    def edges(self) -> list[tuple[int, int]]:
        return [p for k, p in enumerate(self.pairs()) if self.mask >> k & 1]

    def edge_count(self) -> int:
        return bin(self.mask).count("1")


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(itertools.combinations(range(n), 2))}


def max_edges_c3c4_free(n: int) -> tuple[int, SmallGraph]:
    """Maximum edges over all graphs on n <= 7 vertices with no induced C3 or
    C4, plus one maximizer. Plain enumeration of all 2^(n(n-1)/2) bitmasks,
    vectorized but with no isomorphism reduction."""
    if not 1 <= n <= 7:
        raise ValueError(f"n must be in 1..7, got {n}")
    npairs = n * (n - 1) // 2
    pidx = _pair_index(n)
    graphs = np.arange(1 << npairs, dtype=np.uint32)
    good = np.ones(graphs.shape, dtype=bool)
    for tri in itertools.combinations(range(n), 3):
        m = 0
        for pair in itertools.combinations(tri, 2):
            m |= 1 << pidx[pair]
        good &= (graphs & np.uint32(m)) != np.uint32(m)
    for quad in itertools.combinations(range(n), 4):
        sub = 0
        for pair in itertools.combinations(quad, 2):
            sub |= 1 << pidx[pair]
        a, b, c, d = quad
        # the three labeled 4-cycles on {a,b,c,d}: all six pairs minus one
        # pair of vertex-disjoint "diagonals"
        for diag1, diag2 in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            cyc = sub & ~(1 << pidx[diag1]) & ~(1 << pidx[diag2])
            good &= (graphs & np.uint32(sub)) != np.uint32(cyc)
    counts = np.zeros(graphs.shape, dtype=np.uint8)
    for k in range(npairs):
        counts += ((graphs >> np.uint32(k)) & np.uint32(1)).astype(np.uint8)
    counts[~good] = 0
    best = int(np.argmax(counts))
    return int(counts[best]), SmallGraph(n, best)


def has_induced_c3_or_c4(sg: SmallGraph) -> bool:
    """Reference check by direct inspection of every 3- and 4-subset."""
    pidx = _pair_index(sg.n)

    def adj(u: int, v: int) -> bool:
        return bool(sg.mask >> pidx[(min(u, v), max(u, v))] & 1)

    for tri in itertools.combinations(range(sg.n), 3):
        if all(adj(u, v) for u, v in itertools.combinations(tri, 2)):
            return True
    for quad in itertools.combinations(range(sg.n), 4):
        bits = [adj(u, v) for u, v in itertools.combinations(quad, 2)]
        a, b, c, d = quad
        for diag1, diag2 in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            want = [True] * 6
            pairs = list(itertools.combinations(quad, 2))
            want[pairs.index(diag1)] = False
            want[pairs.index(diag2)] = False
            if bits == want:
                return True
    return False


@dataclass(frozen=True)
class BoundCheck:
    name: str
    applicable: bool
    limit: Optional[float] = None
    passed: Optional[bool] = None
    slack: Optional[float] = None


@dataclass(frozen=True)
class BoundReport:
    n: int
    m: int
    checks: tuple[BoundCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)


GENERAL_EDGE_FACTOR = 4.0 + 5.0 / 11.0


def check_bounds(arr: Arrangement) -> BoundReport:
    """Edge-count bounds: general orthogonal, nonnested orthogonal (n >= 5),
    and acute nonnested, each marked inapplicable when its hypothesis fails."""
    g = build_graph(arr)
    n = len(g.vertices)
    m = edge_count(g)
    ortho_ok = validate(arr, Mode.ORTHOGONAL).ok
    acute_ok = validate(arr, Mode.ACUTE).ok
    nonnested = is_nonnested(arr)
    checks = []
    if ortho_ok:
        limit = GENERAL_EDGE_FACTOR * n
        checks.append(BoundCheck("general_orthogonal", True, limit, m <= limit, limit - m))
    else:
        checks.append(BoundCheck("general_orthogonal", False))
    if ortho_ok and nonnested and n >= 5:
        limit = 3.0 * n - 8.0
        checks.append(BoundCheck("nonnested_orthogonal", True, limit, m <= limit, limit - m))
    else:
        checks.append(BoundCheck("nonnested_orthogonal", False))
    if acute_ok and nonnested and n >= 3:
        limit = 3.0 * n - 6.0
        checks.append(BoundCheck("acute_nonnested", True, limit, m <= limit, limit - m))
    else:
        checks.append(BoundCheck("acute_nonnested", False))
    return BoundReport(n, m, tuple(checks))
