"""Lattice approximation of the length metric on |K|.

Each kept square carries a (k+1) x (k+1) lattice; lattice points on a shared
edge or vertex are one node. Arcs join lattice points of the same square that
differ by an axis, diagonal or knight step (16 directions), weighted by
their Euclidean length; kept edges that bound no square get arcs of length
1/k along the edge. A straight segment inside one square is overestimated by
at most 1/cos(atan(1/2)/2) ≈ 1.0275, the widest angular gap of the stencil.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from ..core import SquareComplex
from .points import SurfacePoint

__all__ = ["STENCIL_FACTOR", "Mesh", "build_mesh", "mesh_distance"]

STENCIL_FACTOR = 1.028
_OFFSETS = ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2))


class Mesh:
    """Immutable lattice graph; build with :func:`build_mesh`."""

    def __init__(self, K, k, removed_squares, removed_edges):
        self.K = K
        self.k = k
        self.removed_squares = frozenset(removed_squares)
        self.removed_edges = frozenset(removed_edges)
        self.squares = [s for s in K.squares if s not in self.removed_squares]
        self.edges = [e for e in K.edges if e not in self.removed_edges]

        self.vertex_node = {v: i for i, v in enumerate(K.vertices)}
        n = len(K.vertices)
        self.edge_base = {}
        for e in self.edges:
            self.edge_base[e] = n
            n += k - 1
        self.square_base = {}
        for s in self.squares:
            self.square_base[s] = n
            n += (k - 1) ** 2
        self.n_nodes = n
        self._lattice = {s: self._square_lattice(s) for s in self.squares}

        src, dst, w = [], [], []
        for s in self.squares:
            idx = self._lattice[s]
            for di, dj in _OFFSETS:
                i0, i1 = max(0, -di), k + 1 - max(0, di)
                j0, j1 = max(0, -dj), k + 1 - max(0, dj)
                a = idx[i0:i1, j0:j1].ravel()
                b = idx[i0 + di : i1 + di, j0 + dj : j1 + dj].ravel()
                src.append(a)
                dst.append(b)
                w.append(np.full(a.size, math.hypot(di, dj) / k))
        for e in self.edges:
            chain = self.edge_nodes(e)
            src.append(chain[:-1])
            dst.append(chain[1:])
            w.append(np.full(len(chain) - 1, 1.0 / k))
        if src:
            src = np.concatenate(src)
            dst = np.concatenate(dst)
            w = np.concatenate(w)
        else:
            src = dst = np.zeros(0, dtype=np.int64)
            w = np.zeros(0)
        lo, hi = np.minimum(src, dst), np.maximum(src, dst)
        # the same arc may come from two squares sharing an edge; keep one copy
        order = np.lexsort((w, hi, lo))
        lo, hi, w = lo[order], hi[order], w[order]
        first = np.ones(lo.size, dtype=bool)
        first[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
        lo, hi, w = lo[first], hi[first], w[first]
        self.n_arcs = int(lo.size)
        self.graph = coo_matrix((w, (lo, hi)), shape=(n, n)).tocsr()
        self._sssp = lru_cache(maxsize=512)(self._single_source)

    # -- lattice bookkeeping -------------------------------------------------

    def edge_nodes(self, e: int) -> np.ndarray:
        """Node ids along edge ``e`` from its first to its second declared vertex."""
        u, v = self.K.edges[e]
        base = self.edge_base[e]
        mid = np.arange(base, base + self.k - 1)
        return np.concatenate(([self.vertex_node[u]], mid, [self.vertex_node[v]]))

    def _side(self, x, y):
        """Nodes from vertex x to vertex y along the edge joining them."""
        e = self.K.edge_between(x, y)
        chain = self.edge_nodes(e)
        return chain if self.K.edges[e][0] == x else chain[::-1]

    def _square_lattice(self, s) -> np.ndarray:
        k = self.k
        c0, c1, c2, c3 = self.K.squares[s]
        idx = np.empty((k + 1, k + 1), dtype=np.int64)
        idx[:, 0] = self._side(c0, c1)
        idx[k, :] = self._side(c1, c2)
        idx[:, k] = self._side(c3, c2)
        idx[0, :] = self._side(c0, c3)
        base = self.square_base[s]
        idx[1:k, 1:k] = np.arange(base, base + (k - 1) ** 2).reshape(k - 1, k - 1)
        return idx

    def lattice(self, s: int) -> np.ndarray:
        """``lattice(s)[i, j]`` is the node at local position (i/k, j/k) of square s."""
        return self._lattice[s]

    # -- points --------------------------------------------------------------

    def snap(self, p: SurfacePoint) -> int:
        """Nearest lattice node of the point's carrier; ties go to the smaller node id."""
        p.check(self.K)
        k = self.k
        if p.kind == "vertex":
            return self.vertex_node[p.cell]
        if p.kind == "edge":
            if p.cell in self.removed_edges:
                raise ValueError(f"point {p} lies on removed edge {p.cell}")
            chain = self.edge_nodes(p.cell)
            s = p.coords[0] * k
            cands = {min(int(math.floor(s)), k), min(int(math.ceil(s)), k)}
            return min((abs(s - i), int(chain[i])) for i in cands)[1]
        if p.cell in self.removed_squares:
            raise ValueError(f"point {p} lies in removed square {p.cell}")
        idx = self._lattice[p.cell]
        x, y = p.coords[0] * k, p.coords[1] * k
        best = None
        for i in {math.floor(x), math.ceil(x)}:
            for j in {math.floor(y), math.ceil(y)}:
                i, j = min(i, k), min(j, k)
                key = (math.hypot(x - i, y - j), int(idx[i, j]))
                best = key if best is None or key < best else best
        return best[1]

    def node_point(self, node: int) -> SurfacePoint:
        """A carrier and local coordinates for a node (inverse of :meth:`snap`)."""
        node = int(node)
        k = self.k
        if node < len(self.K.vertices):
            return SurfacePoint.vertex(self.K.vertices[node])
        for e, base in self.edge_base.items():
            if base <= node < base + k - 1:
                return SurfacePoint.on_edge(e, (node - base + 1) / k)
        for s, base in self.square_base.items():
            if base <= node < base + (k - 1) ** 2:
                i, j = divmod(node - base, k - 1)
                return SurfacePoint.in_square(s, (i + 1) / k, (j + 1) / k)
        raise IndexError(node)

    # -- shortest paths -------------------------------------------------------

    def _single_source(self, node: int):
        dist, pred = dijkstra(self.graph, directed=False, indices=node, return_predecessors=True)
        dist.setflags(write=False)
        pred.setflags(write=False)
        return dist, pred

    def distances(self, node: int):
        """(distance array, predecessor array) from ``node``; cached."""
        return self._sssp(int(node))

    def path(self, source: int, target: int) -> list[int]:
        dist, pred = self.distances(source)
        if not np.isfinite(dist[target]):
            raise ValueError(f"nodes {source} and {target} are not connected in the mesh")
        out = [int(target)]
        while out[-1] != source:
            out.append(int(pred[out[-1]]))
        return out[::-1]

    def node_distance(self, a: int, b: int) -> float:
        d = float(self.distances(a)[0][b])
        if not math.isfinite(d):
            raise ValueError(f"nodes {a} and {b} are not connected in the mesh")
        return d

    def is_connected(self) -> bool:
        if self.n_nodes == 0:
            return True
        return bool(np.isfinite(self.distances(0)[0]).all())


def build_mesh(
    K: SquareComplex, k: int = 32, removed_squares=(), removed_edges=()
) -> Mesh:
    """Lattice mesh of |K| with ``k`` steps per square side.

    ``removed_squares`` and ``removed_edges`` mask cells out (for instance
    ``K`` minus a collapsed pair). Removing an edge while keeping a square
    that has it as a side is an error.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    rs, re = set(removed_squares), set(removed_edges)
    for s in rs:
        if s not in K.squares:
            raise KeyError(f"no square {s}")
    for e in re:
        if e not in K.edges:
            raise KeyError(f"no edge {e}")
        kept = [s for s in K.edge_squares[e] if s not in rs]
        if kept:
            raise ValueError(f"cannot remove edge {e}: it is a side of kept square(s) {kept}")
    return Mesh(K, k, rs, re)


def mesh_distance(M: Mesh, P: SurfacePoint, Q: SurfacePoint) -> tuple[float, list[int]]:
    a, b = M.snap(P), M.snap(Q)
    return M.node_distance(a, b), M.path(a, b)
