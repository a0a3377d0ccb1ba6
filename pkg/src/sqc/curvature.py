"""Curvature tests for square complexes.

Combinatorial angles are exact: each square corner contributes pi/2, so the
total angle and the curvature at a vertex are kept as rational multiples of
pi (``fractions.Fraction``) and only turned into floats on demand.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import SquareComplex, bfs_distances, is_connected, link_graph

__all__ = [
    "VertexCurvature",
    "CurvatureReport",
    "Cat0Verdict",
    "CAT0",
    "NOT_NPC",
    "NOT_MEDIAN",
    "SQUARE_MISMATCH",
    "DISCONNECTED",
    "link_girth",
    "is_npc",
    "vertex_curvature",
    "curvature_report",
    "cell_curvature",
    "distance_matrix",
    "median_count",
    "is_median",
    "induced_four_cycles",
    "check_cat0",
    "format_pi",
]

CAT0 = "CAT0"
NOT_NPC = "NotNPC"
NOT_MEDIAN = "NotMedian"
SQUARE_MISMATCH = "SquareMismatch"
DISCONNECTED = "Disconnected"


def format_pi(coeff: Fraction) -> str:
    """Render ``coeff * pi`` as ``k/2·π`` (denominators here are always 1 or 2)."""
    return f"{int(coeff * 2)}/2·π"


def link_girth(K: SquareComplex, v: int) -> float:
    """Girth of the link of ``v``; ``math.inf`` when the link is acyclic."""
    return link_graph(K, v).girth()


def is_npc(K: SquareComplex) -> tuple[bool, int | None]:
    """Link condition: every link has girth at least 4 (corners are pi/2)."""
    for v in K.vertices:
        if link_girth(K, v) < 4:
            return False, v
    return True, None


@dataclass(frozen=True)
class VertexCurvature:
    vertex: int
    classification: str  # interior | boundary | other
    corners: int
    girth: float

    @property
    def theta_pi(self) -> Fraction:
        return Fraction(self.corners, 2)

    @property
    def omega_pi(self) -> Fraction | None:
        if self.classification != "interior":
            return None
        return 2 - self.theta_pi

    @property
    def theta(self) -> float:
        return float(self.theta_pi) * math.pi

    @property
    def omega(self) -> float | None:
        w = self.omega_pi
        return None if w is None else float(w) * math.pi


@dataclass(frozen=True)
class CurvatureReport:
    vertices: tuple[VertexCurvature, ...]
    npc: bool
    witness: int | None

    def table(self) -> str:
        rows = [f"{'vertex':>6}  {'class':<8}  {'c(v)':>4}  {'theta':>8}  {'omega':>8}"]
        for r in self.vertices:
            w = "-" if r.omega_pi is None else format_pi(r.omega_pi)
            rows.append(
                f"{r.vertex:>6}  {r.classification:<8}  {r.corners:>4}  {format_pi(r.theta_pi):>8}  {w:>8}"
            )
        return "\n".join(rows)


def _classification(link_class: str) -> str:
    return {"cycle": "interior", "path": "boundary"}.get(link_class, "other")


def curvature_report(K: SquareComplex) -> CurvatureReport:
    rows = []
    witness = None
    for v in K.vertices:
        link = link_graph(K, v)
        g = link.girth()
        rows.append(VertexCurvature(v, _classification(link.classification), len(link.arcs), g))
        if g < 4 and witness is None:
            witness = v
    return CurvatureReport(tuple(rows), witness is None, witness)


def vertex_curvature(K: SquareComplex, v: int) -> float:
    """2*pi minus the total corner angle at an interior vertex, in radians."""
    link = link_graph(K, v)
    if not link.is_cycle:
        raise ValueError(f"vertex {v} is not interior (link is {link.classification})")
    return float(2 - Fraction(len(link.arcs), 2)) * math.pi


def cell_curvature(angles) -> float:
    """Curvature of a square cut by a diagonal into two triangles.

    ``angles`` are the six triangle angles, three per triangle; the result is
    their sum minus 2*pi.
    """
    angles = [float(a) for a in angles]
    if len(angles) != 6:
        raise ValueError("expected six angles")
    for a in angles:
        if not 0.0 <= a <= math.pi:
            raise ValueError(f"angle {a} outside [0, pi]")
    return (angles[0] + angles[1] + angles[2]) + (angles[3] + angles[4] + angles[5]) - 2 * math.pi


# -- median graphs ----------------------------------------------------------


def distance_matrix(K: SquareComplex) -> tuple[list[int], np.ndarray]:
    """All-pairs edge-path distances; ``-1`` marks unreachable pairs."""
    order = list(K.vertices)
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    D = np.full((n, n), -1, dtype=np.int32)
    for v in order:
        for w, d in bfs_distances(K, v).items():
            D[pos[v], pos[w]] = d
    return order, D


def median_count(D: np.ndarray, u: int, v: int, w: int) -> int:
    """Number of vertices lying on geodesics between each pair of a triple."""
    on_uv = D[u] + D[v] == D[u, v]
    on_vw = D[v] + D[w] == D[v, w]
    on_uw = D[u] + D[w] == D[u, w]
    return int(np.count_nonzero(on_uv & on_vw & on_uw))


def is_median(K: SquareComplex) -> tuple[bool, tuple | None]:
    """Brute-force median test on the 1-skeleton.

    Returns ``(True, None)`` or ``(False, (u, v, w, count))`` for the first
    triple (in declaration order) whose number of medians is not one.
    """
    order, D = distance_matrix(K)
    n = len(order)
    if n and (D < 0).any():
        raise ValueError("median test needs a connected complex")
    # triples with a repeated vertex always have exactly one median
    for a in range(n):
        # on_a[b, z]: z lies on a geodesic from a to b
        on_a = D[a][None, :] + D == D[a][:, None]
        for b in range(a + 1, n - 1):
            rest = slice(b + 1, n)
            on_b = D[b][None, :] + D[rest] == D[b, rest][:, None]
            counts = np.count_nonzero(on_a[b][None, :] & on_a[rest] & on_b, axis=1)
            bad = np.flatnonzero(counts != 1)
            if bad.size:
                c = b + 1 + int(bad[0])
                return False, (order[a], order[b], order[c], int(counts[bad[0]]))
    return True, None


def induced_four_cycles(K: SquareComplex):
    """Yield every induced 4-cycle of the 1-skeleton as a canonical 4-tuple."""
    from .core import canonical_cycle

    nb = K.neighbors
    verts = sorted(K.vertices)
    seen = set()
    for i, x in enumerate(verts):
        for z in verts[i + 1 :]:
            if z in nb[x]:
                continue
            common = sorted(nb[x] & nb[z])
            for y, w in itertools.combinations(common, 2):
                if w in nb[y]:
                    continue
                cyc = canonical_cycle((x, y, z, w))
                if cyc not in seen:
                    seen.add(cyc)
                    yield cyc


@dataclass(frozen=True)
class Cat0Verdict:
    """Outcome of :func:`check_cat0`; ``witness`` is re-checkable against K.

    ``NotNPC`` carries a vertex, ``NotMedian`` a tuple ``(u, v, w, count)``,
    ``SquareMismatch`` a 4-cycle (either an unfilled induced one, or a square
    whose boundary is not induced), ``Disconnected`` a vertex outside the
    component of the first one.
    """

    kind: str
    witness: object = None

    @property
    def is_cat0(self) -> bool:
        return self.kind == CAT0

    def __str__(self):
        return self.kind if self.witness is None else f"{self.kind}({self.witness})"


def check_cat0(K: SquareComplex) -> Cat0Verdict:
    """Decide CAT(0)-ness combinatorially.

    Conditions, checked in order: connected, link condition, median
    1-skeleton, squares are exactly the induced 4-cycles.
    """
    if not K.vertices:
        return Cat0Verdict(DISCONNECTED, None)
    if not is_connected(K):
        reach = bfs_distances(K, K.vertices[0])
        return Cat0Verdict(DISCONNECTED, next(v for v in K.vertices if v not in reach))
    ok, v = is_npc(K)
    if not ok:
        return Cat0Verdict(NOT_NPC, v)
    ok, triple = is_median(K)
    if not ok:
        return Cat0Verdict(NOT_MEDIAN, triple)
    filled = set(K.squares.values())
    nb = K.neighbors
    for c in filled:
        if c[2] in nb[c[0]] or c[3] in nb[c[1]]:
            return Cat0Verdict(SQUARE_MISMATCH, c)
    for cyc in induced_four_cycles(K):
        if cyc not in filled:
            return Cat0Verdict(SQUARE_MISMATCH, cyc)
    return Cat0Verdict(CAT0, None)
