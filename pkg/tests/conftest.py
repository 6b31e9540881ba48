import pytest

from strongapprox import BrauerClass, Curve, Place, SAProblem, make_projective_line


@pytest.fixture
def p1_example():
    """𝐏¹ over Q_p with places of degree 1..6, the class 1/2, S = {deg 2, 4, 6}."""
    curve = make_projective_line("Qp", 6)
    return SAProblem(curve, BrauerClass.of(1, 2), frozenset({"deg2", "deg4", "deg6"}))


def curve_with_degrees(index, degrees, pic0_all=True):
    """A curve whose places are named by position: p0, p1, ..."""
    places = tuple(Place(f"p{i}", d) for i, d in enumerate(degrees))
    return Curve(index, places, pic0_trivial_all=pic0_all)
