from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqc.geometry.gallery import unfold_gallery
from sqc.geometry.mesh import STENCIL_FACTOR, build_mesh, mesh_distance
from sqc.geometry.points import SurfacePoint
from sqc.generators import cubecorner, grid, strip

V = SurfacePoint.vertex
S = SurfacePoint.in_square


def stencil_factor_bound() -> float:
    """Worst-case overestimate of the 16-direction stencil, from its widest gap."""
    dirs = sorted(math.atan2(j, i) for i, j in [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1)])
    a, b = max(zip(dirs, dirs[1:]), key=lambda ab: ab[1] - ab[0])
    ua = np.array([math.cos(a), math.sin(a)])
    ub = np.array([math.cos(b), math.sin(b)])
    # the unit vector bisecting the gap costs 2x when written as x*ua + x*ub
    return float(2 / np.linalg.norm(ua + ub))


def test_stencil_factor_constant_bounds_the_stencil():
    assert stencil_factor_bound() <= STENCIL_FACTOR
    assert stencil_factor_bound() == pytest.approx(1 / math.cos(math.atan(0.5) / 2), abs=1e-12)


# -- construction -------------------------------------------------------------------


def test_single_square_k2():
    M = build_mesh(grid(1, 1), 2)
    assert M.n_nodes == 9
    # axis 6+6, diagonal 4+4, knight 2*4
    assert M.n_arcs == 28


def test_grid_2x2_k2_identifies_shared_nodes():
    assert build_mesh(grid(2, 2), 2).n_nodes == 25


def test_masked_square_loses_interior_nodes():
    M = build_mesh(grid(2, 2), 2, removed_squares=[3])
    assert M.n_nodes == 24
    assert M.is_connected()


def test_node_count_formula():
    K = grid(2, 3)
    k = 8
    V_, E, S_ = K.counts
    assert build_mesh(K, k).n_nodes == V_ + E * (k - 1) + S_ * (k - 1) ** 2


def test_removing_a_kept_square_side_is_an_error():
    with pytest.raises(ValueError, match="kept square"):
        build_mesh(grid(1, 1), 4, removed_edges=[0])


def test_unknown_removed_cells():
    with pytest.raises(KeyError):
        build_mesh(grid(1, 1), 4, removed_squares=[7])
    with pytest.raises(ValueError):
        build_mesh(grid(1, 1), 1)


def test_dangling_edges_carry_arcs():
    K = grid(1, 1)
    M = build_mesh(K, 4, removed_squares=[0])
    assert M.node_distance(M.snap(V(0)), M.snap(V(3))) == pytest.approx(2.0)


# -- distances ---------------------------------------------------------------------


@pytest.mark.parametrize("k", [8, 16, 32])
def test_square_diagonal(k):
    M = build_mesh(grid(1, 1), k)
    d, path = mesh_distance(M, V(0), V(3))
    assert abs(d - math.sqrt(2)) / math.sqrt(2) <= 0.03
    assert path[0] == M.snap(V(0)) and path[-1] == M.snap(V(3))


@pytest.mark.parametrize("k", [8, 16, 32])
def test_flat_2x1_chord(k):
    M = build_mesh(grid(1, 2), k)
    d, _ = mesh_distance(M, V(0), V(5))
    assert abs(d - math.sqrt(5)) / math.sqrt(5) <= 0.03


def test_same_point_is_zero():
    M = build_mesh(grid(1, 1), 8)
    assert mesh_distance(M, S(0, 0.3, 0.3), S(0, 0.3, 0.3))[0] == 0


def test_point_in_removed_square():
    M = build_mesh(grid(2, 2), 4, removed_squares=[3])
    with pytest.raises(ValueError, match="removed square"):
        M.snap(S(3, 0.5, 0.5))


def test_disconnected_mesh_distance():
    K = grid(1, 1)
    # without the square and its two vertical sides, the bottom and top edges separate
    M = build_mesh(K, 4, removed_squares=[0], removed_edges=[K.edge_between(0, 2), K.edge_between(1, 3)])
    assert not M.is_connected()
    with pytest.raises(ValueError, match="not connected"):
        M.node_distance(M.snap(V(0)), M.snap(V(2)))


def test_cone_point_is_a_shortcut():
    # around the cube corner the three squares close up, so opposite corners are
    # sqrt(2) + sqrt(2) apart at most, and at least 2 (going along edges)
    M = build_mesh(cubecorner(), 16)
    d = M.node_distance(M.snap(V(4)), M.snap(V(5)))
    assert 2 - 1e-9 <= d <= 2 * 1.03


def test_snap_ties_go_to_smallest_node():
    M = build_mesh(grid(1, 1), 2)
    n = M.snap(S(0, 0.25, 0.25))
    idx = M.lattice(0)
    assert n == min(int(idx[i, j]) for i in (0, 1) for j in (0, 1))


def test_snap_and_node_point_round_trip():
    K = grid(2, 2)
    M = build_mesh(K, 4)
    for node in range(M.n_nodes):
        assert M.snap(M.node_point(node)) == node


def test_lattice_orientation():
    K = grid(1, 1)
    M = build_mesh(K, 4)
    idx = M.lattice(0)
    c0, c1, c2, c3 = K.squares[0]
    assert idx[0, 0] == M.vertex_node[c0]
    assert idx[4, 0] == M.vertex_node[c1]
    assert idx[4, 4] == M.vertex_node[c2]
    assert idx[0, 4] == M.vertex_node[c3]


points = st.tuples(st.integers(0, 3), st.floats(0, 1), st.floats(0, 1))


@settings(max_examples=40, deadline=None)
@given(points, points, points)
def test_metric_axioms(p, q, r):
    M = _MESH
    a, b, c = (M.snap(S(*x)) for x in (p, q, r))
    assert M.node_distance(a, b) == pytest.approx(M.node_distance(b, a), abs=1e-12)
    assert M.node_distance(a, c) <= M.node_distance(a, b) + M.node_distance(b, c) + 1e-12


_MESH = build_mesh(grid(2, 2), 8)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
def test_sandwich_on_flat_strip(y0, x1, y1, dummy):
    K = strip(3)
    k = 16
    P, Q = S(0, 0, y0), S(2, x1, y1)
    unf = unfold_gallery(K, [0, 1, 2], P, Q)
    M = build_mesh(K, k)
    d, _ = mesh_distance(M, P, Q)
    snap = math.sqrt(2) / k  # both endpoints may move by half a lattice diagonal
    assert unf.inside
    assert unf.length - snap <= d <= STENCIL_FACTOR * unf.length + snap * STENCIL_FACTOR + 1e-12
