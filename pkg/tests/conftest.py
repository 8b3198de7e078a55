import math

import pytest

from orthocircles import Circle, Point, Tolerance, make_arrangement

SQRT2 = math.sqrt(2.0)


def circle(cid: str, x: float, y: float, r: float) -> Circle:
    return Circle(cid, Point(x, y), r)


@pytest.fixture
def tol() -> Tolerance:
    return Tolerance()


@pytest.fixture
def ortho_pair():
    """Two unit circles crossing at a right angle."""
    return make_arrangement([circle("a", 0, 0, 1), circle("b", SQRT2, 0, 1)])
