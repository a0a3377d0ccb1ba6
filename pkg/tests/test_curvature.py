from __future__ import annotations

import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import from_squares, wheel
from sqc.core import canonical_cycle, is_connected, link_graph, validate
from sqc.curvature import (
    CAT0,
    DISCONNECTED,
    NOT_MEDIAN,
    NOT_NPC,
    SQUARE_MISMATCH,
    cell_curvature,
    check_cat0,
    curvature_report,
    distance_matrix,
    format_pi,
    induced_four_cycles,
    is_median,
    is_npc,
    link_girth,
    median_count,
    vertex_curvature,
)
from sqc.generators import cube3skel, cubecorner, grid, random_cat0, staircase, torus, tree_of_squares

# -- independent oracles -------------------------------------------------------


def skeleton(K) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(K.vertices)
    G.add_edges_from(K.edges.values())
    return G


def oracle_link_girth(K, v) -> float:
    arcs = [tuple(sorted((x, y))) for x, y, _ in link_graph(K, v).arcs]
    if len(arcs) != len(set(arcs)):
        return 2
    G = nx.Graph(arcs)
    return nx.girth(G) if G.number_of_edges() else math.inf


def oracle_is_median(K) -> bool:
    G = skeleton(K)
    d = dict(nx.all_pairs_shortest_path_length(G))
    nodes = list(G)

    def interval(x, y):
        return {z for z in nodes if d[x][z] + d[z][y] == d[x][y]}

    for u, v, w in itertools.combinations(nodes, 3):
        if len(interval(u, v) & interval(v, w) & interval(u, w)) != 1:
            return False
    return True


def oracle_induced_four_cycles(K) -> set:
    G = skeleton(K)
    out = set()
    for cyc in nx.simple_cycles(G, length_bound=4):
        if len(cyc) != 4:
            continue
        a, b, c, d = cyc
        if not G.has_edge(a, c) and not G.has_edge(b, d):
            out.add(canonical_cycle(cyc))
    return out


def torus_subcomplex(seed: int, R: int = 4, C: int = 4, drop: float = 0.3):
    """The torus with a seeded random set of squares removed (edges kept)."""
    import random

    T = torus(R, C)
    rnd = random.Random(seed)
    gone = [s for s in T.squares if rnd.random() < drop]
    return T.without(squares=gone)


SMALL = [
    grid(3, 3),
    grid(1, 4),
    staircase(4),
    tree_of_squares(2, 8),
    random_cat0(4, 15),
    torus(3, 3),
    torus(4, 4),
    cube3skel(),
    cubecorner(),
    wheel(5),
]


# -- link girth and NPC ----------------------------------------------------------


def test_link_girth_examples():
    assert link_girth(grid(3, 3), 5) == 4
    assert link_girth(grid(3, 3), 0) == math.inf
    assert link_girth(cube3skel(), 0) == 3


@pytest.mark.parametrize("K", SMALL)
def test_link_girth_matches_networkx(K):
    for v in K.vertices:
        assert link_girth(K, v) == oracle_link_girth(K, v)


def test_npc_examples():
    assert is_npc(grid(4, 2)) == (True, None)
    ok, w = is_npc(cube3skel())
    assert not ok and w in cube3skel().vertices
    assert link_girth(cube3skel(), w) == 3
    assert is_npc(torus(4, 4)) == (True, None)


@pytest.mark.parametrize("K", SMALL)
def test_npc_is_min_girth(K):
    ok, _ = is_npc(K)
    assert ok == (min(oracle_link_girth(K, v) for v in K.vertices) >= 4)


# -- vertex and cell curvature ------------------------------------------------------


def test_vertex_curvature_examples():
    assert vertex_curvature(grid(3, 3), 5) == 0
    assert vertex_curvature(wheel(5), 0) == pytest.approx(-math.pi / 2, abs=1e-15)
    assert vertex_curvature(cube3skel(), 0) == pytest.approx(math.pi / 2, abs=1e-15)


def test_vertex_curvature_rejects_boundary_vertex():
    with pytest.raises(ValueError):
        vertex_curvature(grid(3, 3), 0)


def test_curvature_report_exact_values():
    rep = curvature_report(wheel(6))
    row = rep.vertices[0]
    assert row.classification == "interior"
    assert row.theta_pi == Fraction(3) and row.omega_pi == Fraction(-1)
    assert format_pi(row.omega_pi) == "-2/2·π"
    assert all(r.omega_pi is None for r in rep.vertices[1:])
    assert rep.npc


def test_curvature_report_witness():
    rep = curvature_report(cube3skel())
    assert not rep.npc and rep.witness == 0
    assert "vertex" in rep.table().splitlines()[0]


@pytest.mark.parametrize("K", SMALL)
def test_curvature_sign_matches_girth(K):
    for row in curvature_report(K).vertices:
        if row.classification == "interior":
            assert (row.omega_pi <= 0) == (oracle_link_girth(K, row.vertex) >= 4)


def test_cell_curvature():
    q = math.pi / 4
    assert cell_curvature([2 * q, q, q, 2 * q, q, q]) == pytest.approx(0, abs=1e-15)
    assert cell_curvature([math.pi / 3] * 6) == pytest.approx(0, abs=1e-15)
    six = [math.pi / 3] * 5 + [math.pi / 3 + 0.1]
    assert cell_curvature(six) == pytest.approx(0.1, abs=1e-12)
    with pytest.raises(ValueError):
        cell_curvature([4.0, 0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        cell_curvature([0.1] * 5)


# -- median graphs ----------------------------------------------------------------


def test_median_examples():
    assert is_median(grid(3, 3)) == (True, None)
    assert is_median(from_squares([], [(0, 1)])) == (True, None)


def test_torus_4x4_skeleton_is_median():
    # C4 x C4 is the 4-cube graph, a median graph
    assert oracle_is_median(torus(4, 4))
    assert is_median(torus(4, 4)) == (True, None)


@pytest.mark.parametrize("R, C", [(3, 3), (3, 4), (5, 5)])
def test_other_tori_are_not_median(R, C):
    K = torus(R, C)
    ok, w = is_median(K)
    assert not oracle_is_median(K) and not ok
    order, D = distance_matrix(K)
    pos = {v: i for i, v in enumerate(order)}
    u, v, x, count = w
    assert median_count(D, pos[u], pos[v], pos[x]) == count != 1


@pytest.mark.parametrize("K", SMALL)
def test_median_matches_networkx(K):
    assert is_median(K)[0] == oracle_is_median(K)


def test_median_rejects_disconnected():
    K = from_squares([], [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        is_median(K)


@pytest.mark.parametrize("K", SMALL)
def test_induced_four_cycles_match_networkx(K):
    assert set(induced_four_cycles(K)) == oracle_induced_four_cycles(K)


# -- verdicts -------------------------------------------------------------------


@pytest.mark.parametrize("R, C", [(1, 1), (2, 3), (4, 4), (6, 6)])
def test_grids_are_cat0(R, C):
    assert check_cat0(grid(R, C)).kind == CAT0


def test_cube_skeleton_not_npc():
    v = check_cat0(cube3skel())
    assert v.kind == NOT_NPC and link_girth(cube3skel(), v.witness) == 3


def test_torus_4x4_verdict_is_square_mismatch():
    # the skeleton is median; the unfilled induced 4-cycles give the verdict
    v = check_cat0(torus(4, 4))
    assert v.kind == SQUARE_MISMATCH
    assert v.witness in oracle_induced_four_cycles(torus(4, 4))
    assert v.witness not in set(torus(4, 4).squares.values())


def test_torus_3x3_verdict_is_not_median():
    assert check_cat0(torus(3, 3)).kind == NOT_MEDIAN


def test_unfilled_square_is_mismatch():
    K = from_squares([], [(0, 1), (1, 2), (2, 3), (3, 0)])
    v = check_cat0(K)
    assert v.kind == SQUARE_MISMATCH and v.witness == (0, 1, 2, 3)


def test_disconnected_verdict():
    v = check_cat0(from_squares([], [(0, 1), (2, 3)]))
    assert v.kind == DISCONNECTED and v.witness in (2, 3)


def test_wheel_five_is_cat0():
    assert check_cat0(wheel(5)).is_cat0
    assert str(check_cat0(cube3skel())) == "NotNPC(0)"


def oracle_cat0(K) -> bool:
    if not is_connected(K):
        return False
    if any(oracle_link_girth(K, v) < 4 for v in K.vertices):
        return False
    if not oracle_is_median(K):
        return False
    return oracle_induced_four_cycles(K) == set(K.squares.values())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_verdict_matches_oracle_on_torus_subcomplexes(seed):
    K = torus_subcomplex(seed)
    assert validate(K).ok
    assert check_cat0(K).is_cat0 == oracle_cat0(K)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 20))
def test_random_cat0_generator_agrees_with_oracle(seed, n):
    K = random_cat0(seed, n)
    assert oracle_cat0(K)
