import math

import numpy as np
import pytest

from orthocircles import (
    DomainError,
    Mode,
    RelationKind,
    augment_triangles,
    build_graph,
    crossing_pairs,
    edge_count,
    growth_ratio,
    is_nonnested,
    make_arrangement,
    make_nested_wheels,
    make_nonnested_wheels,
    make_random_nonnested,
    make_wheel,
    orthogonal,
    perturb_acute,
    relation,
    validate,
    wheel_geometry,
)
from orthocircles.cli import arrangement_to_document, dumps_document

from conftest import circle


def alpha_oracle(a: int) -> float:
    """Growth ratio recomputed as the larger root of the quadratic that makes
    satellites of adjacent wheels orthogonal:
    cos(2*pi/a) * t^2 - 2*cos(pi/a) * t + cos(2*pi/a) = 0."""
    c1 = math.cos(math.pi / a)
    c2 = math.cos(2 * math.pi / a)
    roots = np.roots([c2, -2 * c1, c2])
    return float(max(roots.real))


class TestWheelGeometry:
    @pytest.mark.parametrize("a", range(5, 21))
    def test_growth_ratio_matches_quadratic_oracle(self, a):
        assert growth_ratio(a) == pytest.approx(alpha_oracle(a), rel=1e-12)

    def test_alpha_at_five(self):
        assert growth_ratio(5) == pytest.approx(5.03755914180156, rel=1e-12)

    def test_first_wheel_constants(self):
        geo = wheel_geometry(1, 5)
        # frozen from the closed forms; d^2 = h^2 + s^2 cross-checks them
        assert geo.orbit_radii[0] == pytest.approx(1.2030019100150913, rel=1e-12)
        assert geo.hub_radii[0] == pytest.approx(0.6687403049764221, rel=1e-12)
        assert geo.orbit_radii[0] ** 2 == pytest.approx(
            geo.hub_radii[0] ** 2 + 1.0, rel=1e-12
        )

    @pytest.mark.parametrize("a", [5, 8, 13, 20])
    @pytest.mark.parametrize("x", [1, 3, 6])
    def test_hub_satellite_orbit_identity(self, x, a):
        geo = wheel_geometry(x, a)
        for i in range(x):
            lhs = geo.hub_radii[i] ** 2 + geo.satellite_radii[i] ** 2
            assert lhs == pytest.approx(geo.orbit_radii[i] ** 2, rel=1e-12)

    @pytest.mark.parametrize("a", [5, 8, 13, 20])
    def test_neighbor_satellite_distance(self, a):
        geo = wheel_geometry(3, a)
        for i in range(1, 4):
            p = geo.satellite_center(i, 1)
            q = geo.satellite_center(i, 2)
            d = math.hypot(p.x - q.x, p.y - q.y)
            assert d == pytest.approx(math.sqrt(2) * geo.satellite_radii[i - 1], rel=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            wheel_geometry(1, 4)
        with pytest.raises(DomainError):
            wheel_geometry(0, 5)


class TestMakeWheel:
    def test_basic_wheel(self):
        arr = make_wheel(5)
        assert validate(arr, Mode.ORTHOGONAL).ok
        g = build_graph(arr)
        assert len(g.vertices) == 6
        assert edge_count(g) == 10
        adj = g.adjacency()
        assert len(adj["hub-1"]) == 5
        for j in range(1, 6):
            assert len(adj[f"sat-1-{j}"]) == 3

    def test_scale_and_rotation(self):
        arr = make_wheel(6, scale=2.5, rotation=0.4)
        assert validate(arr, Mode.ORTHOGONAL).ok
        assert arr.by_id("sat-1-1").radius == pytest.approx(2.5)

    def test_bad_scale(self):
        with pytest.raises(DomainError):
            make_wheel(5, scale=0.0)


class TestNestedWheels:
    @pytest.mark.parametrize("x,a", [(1, 5), (2, 5), (2, 7), (3, 5), (4, 11)])
    def test_counts(self, x, a):
        g = build_graph(make_nested_wheels(x, a))
        assert len(g.vertices) == x * (a + 1)
        assert edge_count(g) == 4 * x * a - 2 * a

    def test_single_wheel_equals_rotated_wheel(self):
        stack = make_nested_wheels(1, 5)
        wheel = make_wheel(5, 1.0, math.pi / 5)
        assert {c.id for c in stack} == {c.id for c in wheel}
        for c in stack:
            w = wheel.by_id(c.id)
            assert c.center.x == pytest.approx(w.center.x, abs=1e-12)
            assert c.center.y == pytest.approx(w.center.y, abs=1e-12)
            assert c.radius == pytest.approx(w.radius, rel=1e-12)

    def test_geometric_self_similarity(self):
        arr = make_nested_wheels(4, 7)
        alpha = growth_ratio(7)
        for i in range(1, 4):
            ratio = arr.by_id(f"sat-{i + 1}-1").radius / arr.by_id(f"sat-{i}-1").radius
            assert ratio == pytest.approx(alpha, rel=1e-14)
            hub_ratio = arr.by_id(f"hub-{i + 1}").radius / arr.by_id(f"hub-{i}").radius
            assert hub_ratio == pytest.approx(alpha, rel=1e-14)

    def test_hub_crosses_only_its_wheel(self):
        arr = make_nested_wheels(3, 6)
        for i in (1, 2, 3):
            hub = arr.by_id(f"hub-{i}")
            crossers = {
                c.id
                for c in arr.circles
                if c.id != hub.id
                and relation(hub, c, arr.tol).kind is RelationKind.CROSSING
            }
            assert crossers == {f"sat-{i}-{j}" for j in range(1, 7)}

    def test_satellite_crosses_two_in_each_adjacent_wheel(self):
        arr = make_nested_wheels(3, 8)
        sat = arr.by_id("sat-2-3")
        neighbors = {
            c.id
            for c in arr.circles
            if c.id != sat.id and relation(sat, c, arr.tol).kind is RelationKind.CROSSING
        }
        assert sum(1 for v in neighbors if v.startswith("sat-1-")) == 2
        assert sum(1 for v in neighbors if v.startswith("sat-3-")) == 2
        assert sum(1 for v in neighbors if v.startswith("sat-2-")) == 2
        assert "hub-2" in neighbors and len(neighbors) == 7


class TestNonnestedWheels:
    @pytest.mark.parametrize("x", [1, 2, 3, 4])
    def test_counts_and_nonnesting(self, x):
        arr = make_nonnested_wheels(x)
        n = 5 * x + 1
        assert len(arr) == n
        assert is_nonnested(arr)
        assert validate(arr, Mode.ORTHOGONAL).ok
        assert edge_count(build_graph(arr)) == 3 * n - 8

    def test_degree_profile(self):
        g = build_graph(make_nonnested_wheels(3))
        adj = g.adjacency()
        assert len(adj["hub-1"]) == 5
        for j in range(1, 6):
            assert len(adj[f"sat-1-{j}"]) == 5
            assert len(adj[f"sat-2-{j}"]) == 6
            assert len(adj[f"sat-3-{j}"]) == 4

    def test_single_wheel_case(self):
        g = build_graph(make_nonnested_wheels(1))
        assert len(g.vertices) == 6
        assert edge_count(g) == 10


class TestAugmentTriangles:
    def test_two_orthogonal_circles(self, ortho_pair):
        aug = augment_triangles(ortho_pair)
        assert len(aug) == 4
        assert validate(aug, Mode.ORTHOGONAL).ok
        a, b = ortho_pair.by_id("a"), ortho_pair.by_id("b")
        for c in aug.circles:
            if c.id.startswith("small-"):
                assert orthogonal(c, a, aug.tol)
                assert orthogonal(c, b, aug.tol)

    @pytest.mark.parametrize("x,a", [(1, 5), (2, 5), (1, 7)])
    def test_adds_one_circle_per_intersection_point(self, x, a):
        base = make_nested_wheels(x, a)
        aug = augment_triangles(base)
        assert len(aug) == len(base) + (8 * x * a - 4 * a)
        assert validate(aug, Mode.ORTHOGONAL).ok

    def test_small_circles_cross_only_their_parents(self):
        aug = augment_triangles(make_nested_wheels(1, 5))
        smalls = [c for c in aug.circles if c.id.startswith("small-")]
        for s in smalls:
            crossers = [
                c.id
                for c in aug.circles
                if c.id != s.id and relation(s, c, aug.tol).kind is RelationKind.CROSSING
            ]
            assert len(crossers) == 2
            assert all(not cid.startswith("small-") for cid in crossers)


class TestPerturbAcute:
    def test_validates_acute_and_stays_plane(self):
        base = make_nonnested_wheels(3)
        out = perturb_acute(base, seed=7)
        assert validate(out, Mode.ACUTE).ok
        assert is_nonnested(out)
        g = build_graph(out)
        assert crossing_pairs(g).count == 0
        assert edge_count(g) <= edge_count(build_graph(base))

    def test_deterministic(self):
        a = perturb_acute(make_nonnested_wheels(2), seed=123)
        b = perturb_acute(make_nonnested_wheels(2), seed=123)
        assert dumps_document(arrangement_to_document(a)) == dumps_document(
            arrangement_to_document(b)
        )

    def test_identity_arrangement_is_acute(self):
        # unchanged orthogonal input already satisfies the acute constraint
        assert validate(make_nonnested_wheels(2), Mode.ACUTE).ok

    def test_shrunk_pair_crosses_below_right_angle(self, ortho_pair):
        shrunk = make_arrangement(
            [
                circle("a", 0, 0, 0.98),
                circle("b", math.sqrt(2), 0, 0.97),
            ]
        )
        rel = relation(shrunk.by_id("a"), shrunk.by_id("b"), shrunk.tol)
        assert rel.kind is RelationKind.CROSSING
        assert rel.angle < math.pi / 2


class TestRandomNonnested:
    def test_single_circle(self):
        arr = make_random_nonnested(1, 0)
        assert len(arr) == 1

    @pytest.mark.parametrize("seed", [0, 1, 17])
    def test_valid_nonnested_and_plane(self, seed):
        arr = make_random_nonnested(35, seed)
        assert validate(arr, Mode.ORTHOGONAL).ok
        assert is_nonnested(arr)
        assert crossing_pairs(build_graph(arr)).count == 0

    def test_deterministic(self):
        a = make_random_nonnested(30, 7)
        b = make_random_nonnested(30, 7)
        assert dumps_document(arrangement_to_document(a)) == dumps_document(
            arrangement_to_document(b)
        )

    def test_bad_n(self):
        with pytest.raises(DomainError):
            make_random_nonnested(0, 1)
