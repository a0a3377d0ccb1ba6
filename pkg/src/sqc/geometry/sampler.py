"""Randomized CAT(0) inequality check on the lattice mesh.

For a random triple of mesh nodes (p, q, r) we take a node x halfway from p
to q and a node y halfway from p to r (both read off shortest mesh routes), place x̄ and ȳ at
the same distances from p̄ in the planar comparison triangle, and require

    d(x, y) <= (STENCIL_FACTOR + tolerance) * d(x̄, ȳ) + 1/k

where the additive 1/k absorbs the rounding of x and y to lattice nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import dijkstra

from ..core import SquareComplex
from .comparison import comparison_triangle
from .mesh import STENCIL_FACTOR, Mesh, build_mesh

__all__ = ["TriangleWitness", "SampleReport", "sample_cat0", "DEGENERATE_AREA"]

DEGENERATE_AREA = 1e-12


@dataclass(frozen=True)
class TriangleWitness:
    nodes: tuple[int, int, int]
    sides: tuple[float, float, float]  # |pq|, |pr|, |qr|
    midpoints: tuple[int, int]
    d_xy: float
    d_bar: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.d_xy / self.d_bar if self.d_bar > 0 else math.inf

    def __str__(self):
        p, q, r = self.nodes
        return (
            f"triangle ({p}, {q}, {r}) sides {self.sides[0]:.4f} {self.sides[1]:.4f} "
            f"{self.sides[2]:.4f}: d(x,y) = {self.d_xy:.4f} > {self.bound:.4f} "
            f"(comparison {self.d_bar:.4f})"
        )


@dataclass(frozen=True)
class SampleReport:
    n_requested: int
    n_checked: int
    n_degenerate: int
    violations: list[TriangleWitness] = field(default_factory=list)
    max_ratio: float = 0.0
    k: int = 32
    tolerance: float = 0.05

    @property
    def ok(self) -> bool:
        return not self.violations

    def rows(self):
        return [
            ("triangles", self.n_requested, "", True),
            ("checked", self.n_checked, "", True),
            ("degenerate", self.n_degenerate, "", True),
            ("max_ratio", self.max_ratio, STENCIL_FACTOR + self.tolerance, True),
            ("violations", len(self.violations), 0, self.ok),
        ]


def _limited(M: Mesh, node: int, limit: float) -> np.ndarray:
    return dijkstra(M.graph, directed=False, indices=int(node), limit=limit)


def _midpoint(M: Mesh, p: int, q: int):
    """A metric midpoint of p and q, with its distance from p.

    Mesh distances come from a polygonal norm, so the nodes equidistant from
    p and q on a shortest route form a band centred on the true midpoint.
    We take the node at the centre of that band: find its two far ends and
    pick the member most nearly equidistant from both.
    """
    dp = M.distances(p)[0]
    dq = M.distances(q)[0]
    L = dp[q]
    eps = 2.5 / M.k
    band = np.flatnonzero((dp + dq <= L + eps) & (np.abs(dp - dq) <= eps))
    if band.size == 0:
        path = M.path(p, q)
        x = min(path, key=lambda n: (abs(dp[n] - L / 2), n))
        return x, float(dp[x])
    if band.size > 2:
        reach = 0.25 * L + 2 * eps
        d0 = _limited(M, band[0], reach)
        e1 = band[np.argmax(np.where(np.isfinite(d0[band]), d0[band], -1))]
        d1 = _limited(M, e1, 2 * reach)
        e2 = band[np.argmax(np.where(np.isfinite(d1[band]), d1[band], -1))]
        d2 = _limited(M, e2, 2 * reach)
        spread = np.maximum(d1[band], d2[band])
        x = int(band[np.argmin(spread)])
    else:
        x = int(band[0])
    return x, float(dp[x])


def sample_cat0(
    K: SquareComplex,
    removed_squares=(),
    removed_edges=(),
    n_triangles: int = 500,
    k: int = 32,
    tolerance: float = 0.05,
    seed: int = 0,
    *,
    mesh: Mesh | None = None,
) -> SampleReport:
    """Check the CAT(0) inequality on ``n_triangles`` seeded random node triples."""
    M = mesh if mesh is not None else build_mesh(K, k, removed_squares, removed_edges)
    if M.n_nodes < 3:
        raise ValueError("mesh has fewer than three nodes")
    if not M.is_connected():
        raise ValueError("mesh is disconnected after masking")
    rng = np.random.default_rng(seed)
    factor = STENCIL_FACTOR + tolerance
    checked = degenerate = 0
    worst = 0.0
    violations = []
    for _ in range(n_triangles):
        p, q, r = (int(x) for x in rng.choice(M.n_nodes, size=3, replace=False))
        d_pq, d_pr, d_qr = M.node_distance(p, q), M.node_distance(p, r), M.node_distance(q, r)
        try:
            tri = comparison_triangle(d_qr, d_pr, d_pq)
        except ValueError:
            # mesh distances can break the triangle inequality by rounding only
            degenerate += 1
            continue
        if tri.area < DEGENERATE_AREA:
            degenerate += 1
            continue
        x, s = _midpoint(M, p, q)
        y, t = _midpoint(M, p, r)
        theta = tri.angles[0]
        d_bar = math.sqrt(max(s * s + t * t - 2 * s * t * math.cos(theta), 0.0))
        d_xy = M.node_distance(x, y)
        bound = factor * d_bar + 1.0 / M.k
        checked += 1
        if d_bar > 0:
            worst = max(worst, d_xy / d_bar)
        if d_xy > bound:
            violations.append(
                TriangleWitness((p, q, r), (d_pq, d_pr, d_qr), (x, y), d_xy, d_bar, bound)
            )
    return SampleReport(n_triangles, checked, degenerate, violations, worst, M.k, tolerance)
