import math

import pytest

from orthocircles import (
    Mode,
    TangencyError,
    centers_outside_other_circles,
    depth_labeling,
    is_nonnested,
    make_arrangement,
    make_nested_wheels,
    make_nonnested_wheels,
    make_random_nonnested,
    validate,
)
from orthocircles.arrangement import Arrangement

from conftest import circle


def longest_chain_depths(arr: Arrangement) -> dict[str, int]:
    """Independent depth oracle: exhaustive longest-chain search over the
    containment order, with containment decided directly from distances."""
    circles = list(arr.circles)

    def inside(inner, outer) -> bool:
        d = math.hypot(inner.center.x - outer.center.x, inner.center.y - outer.center.y)
        return d + inner.radius < outer.radius

    def chain_from(c) -> int:
        best = 0
        for nxt in circles:
            if nxt.id != c.id and inside(nxt, c):
                best = max(best, 1 + chain_from(nxt))
        return best

    return {c.id: chain_from(c) for c in circles}


class TestConstruction:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            make_arrangement([circle("a", 0, 0, 1), circle("a", 5, 0, 1)])

    def test_identical_circles_rejected(self):
        with pytest.raises(ValueError, match="identical"):
            make_arrangement([circle("a", 0, 0, 1), circle("b", 0, 0, 1)])

    def test_strict_rejects_tangency(self):
        with pytest.raises(TangencyError):
            make_arrangement([circle("a", 0, 0, 1), circle("b", 2, 0, 1)], strict=True)

    def test_nonstrict_allows_tangency_for_later_diagnosis(self):
        arr = make_arrangement([circle("a", 0, 0, 1), circle("b", 2, 0, 1)])
        assert len(arr) == 2


class TestValidate:
    def test_wheel_stack_is_orthogonal(self):
        report = validate(make_nested_wheels(3, 15), Mode.ORTHOGONAL)
        assert report.ok and not report.violations

    def test_oblique_pair_violates_both_modes(self):
        # equal unit circles at distance 1 cross at 2*pi/3 > pi/2
        arr = make_arrangement([circle("a", 0, 0, 1), circle("b", 1, 0, 1)])
        for mode in (Mode.ORTHOGONAL, Mode.ACUTE):
            report = validate(arr, mode)
            assert not report.ok
            assert report.violations[0].ids == ("a", "b")

    def test_empty_arrangement_ok(self):
        arr = make_arrangement([])
        assert validate(arr, Mode.ORTHOGONAL).ok
        assert validate(arr, Mode.ACUTE).ok

    def test_tangent_pair_violates_both_modes(self):
        arr = make_arrangement([circle("a", 0, 0, 1), circle("b", 2, 0, 1)])
        for mode in (Mode.ORTHOGONAL, Mode.ACUTE):
            report = validate(arr, mode)
            assert not report.ok
            assert report.violations[0].observed == "tangent"

    @pytest.mark.parametrize("maker", [lambda: make_nested_wheels(2, 6), lambda: make_nonnested_wheels(3)])
    def test_orthogonal_ok_implies_acute_ok(self, maker):
        arr = maker()
        assert validate(arr, Mode.ORTHOGONAL).ok
        assert validate(arr, Mode.ACUTE).ok

    def test_concentric_pairs_noted(self):
        report = validate(make_nested_wheels(2, 5), Mode.ORTHOGONAL)
        assert any("concentric" in note for note in report.notes)


class TestDepth:
    def test_disjoint_circles_all_shallow(self):
        arr = make_arrangement([circle("a", 0, 0, 1), circle("b", 10, 0, 1)])
        assert set(depth_labeling(arr).depths.values()) == {0}

    def test_single_nested_pair(self):
        arr = make_arrangement([circle("outer", 0, 0, 3), circle("inner", 0, 0, 1)])
        depths = depth_labeling(arr)
        assert depths.depth("outer") == 1
        assert depths.depth("inner") == 0

    def test_wheel_stack_depths_match_chain_oracle(self):
        arr = make_nested_wheels(3, 5)
        assert depth_labeling(arr).depths == longest_chain_depths(arr)

    def test_random_instances_match_chain_oracle(self):
        for seed in (1, 2, 3):
            arr = make_random_nonnested(25, seed)
            assert depth_labeling(arr).depths == longest_chain_depths(arr)

    def test_monotone_under_insertion(self):
        base = [circle("outer", 0, 0, 5), circle("mid", 0.2, 0, 2)]
        before = depth_labeling(make_arrangement(base)).depths
        extended = depth_labeling(
            make_arrangement(base + [circle("tiny", 0.1, 0.1, 0.5)])
        ).depths
        for cid, d in before.items():
            assert extended[cid] >= d


class TestNesting:
    def test_nonnested_wheels(self):
        assert is_nonnested(make_nonnested_wheels(2))

    def test_wheel_stack_is_nested(self):
        arr = make_nested_wheels(2, 5)
        assert not is_nonnested(arr)
        # hub-2 properly contains every wheel-1 circle
        hub2 = arr.by_id("hub-2")
        for cid in ("hub-1", "sat-1-1", "sat-1-2", "sat-1-3", "sat-1-4", "sat-1-5"):
            c = arr.by_id(cid)
            d = math.hypot(c.center.x - hub2.center.x, c.center.y - hub2.center.y)
            assert d + c.radius < hub2.radius

    def test_single_circle_nonnested(self):
        assert is_nonnested(make_arrangement([circle("a", 0, 0, 1)]))

    @pytest.mark.parametrize(
        "maker",
        [
            lambda: make_nonnested_wheels(2),
            lambda: make_nested_wheels(2, 5),
            lambda: make_arrangement([circle("a", 0, 0, 3), circle("b", 0.5, 0, 1)]),
        ],
    )
    def test_nonnested_iff_all_depths_zero(self, maker):
        arr = maker()
        depths = depth_labeling(arr)
        assert is_nonnested(arr) == (set(depths.depths.values()) == {0})

    def test_centers_outside_for_nonnested(self):
        for arr in (make_nonnested_wheels(3), make_random_nonnested(30, 11)):
            assert validate(arr, Mode.ORTHOGONAL).ok
            assert is_nonnested(arr)
            assert centers_outside_other_circles(arr)
