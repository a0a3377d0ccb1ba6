from __future__ import annotations

import math

import pytest

from sqc.geometry.collapsed import check_collapsed_geodesic, through_square
from sqc.geometry.mesh import STENCIL_FACTOR
from sqc.geometry.points import SurfacePoint
from sqc.generators import cube3skel, grid, strip

P_ = SurfacePoint.parse


def polyline(*pts) -> float:
    return sum(math.dist(p, q) for p, q in zip(pts, pts[1:]))


def within_mesh_error(mesh: float, exact: float, k: int = 32) -> bool:
    return exact - 1e-9 <= mesh <= STENCIL_FACTOR * exact + 2 / k


def test_case_a_on_l_shape():
    # grid 2x2 without its top-right square; P at (1.5, 0.7), Q at (0.7, 1.5)
    rep = check_collapsed_geodesic(grid(2, 2), 3, 11, P_("1:0.5,0.7"), P_("2:0.7,0.5"))
    assert rep.case == "A" and rep.ok
    assert rep.labels == {"a": 4, "b": 5, "c": 8, "h": 7}
    assert rep.chord_length == pytest.approx(math.hypot(0.8, 0.8))
    exact = polyline((1.5, 0.7), (1, 1), (0.7, 1.5))
    assert within_mesh_error(rep.d_collapsed, exact)
    assert rep.via_ah > rep.d_collapsed + 0.5


def test_case_a_near_the_corner():
    rep = check_collapsed_geodesic(grid(2, 2), 3, 11, P_("1:0.9,0.9"), P_("2:0.9,0.9"))
    assert rep.case == "A" and rep.ok


def test_case_b_on_strip():
    # the middle square and its bottom edge go; the route climbs over the top
    rep = check_collapsed_geodesic(strip(3), 1, 1, P_("0:0.5,0.3"), P_("2:0.5,0.8"))
    assert rep.case == "B" and rep.ok
    assert rep.labels == {"a": 5, "b": 1, "c": 2, "h": 6}
    exact = polyline((0.5, 0.3), (1, 1), (2, 1), (2.5, 0.8))
    assert within_mesh_error(rep.d_collapsed, exact)
    assert rep.chord_length == pytest.approx(math.hypot(2, 0.5))


def test_route_avoiding_sigma():
    rep = check_collapsed_geodesic(grid(2, 2), 3, 11, P_("0:0.2,0.2"), P_("0:0.8,0.7"))
    assert rep.case == "none" and rep.ok and rep.d_collapsed == rep.d_full


def test_rows_and_verdict_row():
    rep = check_collapsed_geodesic(strip(3), 1, 1, P_("0:0.5,0.3"), P_("2:0.5,0.8"))
    names = [r[0] for r in rep.rows()]
    assert names[0] == "case" and names[-1] == "verdict"
    assert rep.rows()[-1][3] is True


def test_through_square_finds_the_crossing():
    unf, i = through_square(strip(3), 1, P_("0:0.5,0.3"), P_("2:0.5,0.8"))
    assert unf.gallery.squares == (0, 1, 2) and i == 1


def test_non_cat0_input():
    with pytest.raises(ValueError, match="CAT"):
        check_collapsed_geodesic(cube3skel(), 0, 0, P_("v0"), P_("v1"))


def test_edge_must_be_a_free_side():
    K = grid(2, 2)
    with pytest.raises(ValueError, match="not a side"):
        check_collapsed_geodesic(K, 3, 0, P_("v0"), P_("v8"))
    with pytest.raises(ValueError, match="not free"):
        check_collapsed_geodesic(K, 3, K.edge_between(4, 5), P_("v0"), P_("v8"))


def test_points_must_avoid_sigma():
    with pytest.raises(ValueError, match="inside the collapsed square"):
        check_collapsed_geodesic(grid(2, 2), 3, 11, P_("3:0.5,0.5"), P_("v0"))
