"""Gallery unfolding: lay a chain of edge-adjacent squares flat in the plane."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import SquareComplex
from .points import SurfacePoint

__all__ = ["Gallery", "Unfolding", "make_gallery", "unfold_gallery", "shared_edge"]

_EPS = 1e-12


def shared_edge(K: SquareComplex, s: int, t: int) -> int | None:
    common = set(K.square_edges[s]) & set(K.square_edges[t])
    return common.pop() if len(common) == 1 else None


@dataclass(frozen=True)
class Gallery:
    """Squares ``squares[i]`` and ``squares[i+1]`` meet along ``edges[i]``.

    ``placement[i]`` maps each corner of ``squares[i]`` to its planar position.
    """

    squares: tuple[int, ...]
    edges: tuple[int, ...]
    placement: tuple[dict, ...]

    def position(self, K: SquareComplex, i: int, p: SurfacePoint) -> np.ndarray:
        """Planar position of ``p`` seen from the i-th square of the gallery."""
        c = K.squares[self.squares[i]]
        pl = self.placement[i]
        x, y = p.local_in_square(K, self.squares[i])
        o = pl[c[0]]
        return o + x * (pl[c[1]] - o) + y * (pl[c[3]] - o)


def make_gallery(K: SquareComplex, squares) -> Gallery:
    squares = tuple(int(s) for s in squares)
    if not squares:
        raise ValueError("empty gallery")
    for s in squares:
        if s not in K.squares:
            raise ValueError(f"no square {s}")
    edges = []
    for s, t in zip(squares, squares[1:]):
        e = shared_edge(K, s, t) if s != t else None
        if e is None:
            raise ValueError(f"squares {s} and {t} do not share exactly one edge")
        edges.append(e)

    c = K.squares[squares[0]]
    unit = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    placement = [{v: np.array(p) for v, p in zip(c, unit)}]
    for i, e in enumerate(edges):
        prev = placement[-1]
        nxt = K.squares[squares[i + 1]]
        x, y = K.edges[e]
        px, py = prev[x], prev[y]
        centre = sum(prev.values()) / 4
        d = py - px
        normal = np.array([-d[1], d[0]])
        if normal @ (px - centre) < 0:
            normal = -normal
        pos = {x: px, y: py}
        j = nxt.index(x)
        for nb in (nxt[(j + 1) % 4], nxt[(j - 1) % 4]):
            if nb != y:
                pos[nb] = px + normal
        j = nxt.index(y)
        for nb in (nxt[(j + 1) % 4], nxt[(j - 1) % 4]):
            if nb != x:
                pos[nb] = py + normal
        placement.append(pos)
    return Gallery(squares, tuple(edges), tuple(placement))


@dataclass(frozen=True)
class Unfolding:
    """Result of :func:`unfold_gallery`.

    ``inside`` tells whether the planar chord stays in the unfolded gallery;
    ``length`` is the chord length either way, ``crossings`` the chord
    parameters (in [0, 1]) where it meets each shared edge.
    """

    gallery: Gallery
    start: np.ndarray
    end: np.ndarray
    length: float
    inside: bool
    crossings: tuple[float, ...]

    @property
    def exact_length(self) -> float | None:
        return self.length if self.inside else None

    def __str__(self):
        return f"{self.length:.12g}" if self.inside else "segment exits gallery"


def _segment_hit(p, q, a, b):
    """Chord parameter where p->q meets segment a-b, or None."""
    r, s = q - p, b - a
    den = r[0] * s[1] - r[1] * s[0]
    if abs(den) < _EPS:
        return None
    w = a - p
    t = (w[0] * s[1] - w[1] * s[0]) / den
    u = (w[0] * r[1] - w[1] * r[0]) / den
    if -_EPS <= t <= 1 + _EPS and -_EPS <= u <= 1 + _EPS:
        return t
    return None


def unfold_gallery(K: SquareComplex, gallery, P: SurfacePoint, Q: SurfacePoint) -> Unfolding:
    """Unfold ``gallery`` (square ids or a :class:`Gallery`) and test the chord P-Q.

    P must lie in the first square and Q in the last.
    """
    g = gallery if isinstance(gallery, Gallery) else make_gallery(K, gallery)
    p = g.position(K, 0, P)
    q = g.position(K, len(g.squares) - 1, Q)
    length = float(math.hypot(*(q - p)))
    crossings = []
    inside = True
    last = -math.inf
    for i, e in enumerate(g.edges):
        x, y = K.edges[e]
        t = _segment_hit(p, q, g.placement[i][x], g.placement[i][y])
        if t is None or t < last - _EPS:
            inside = False
            break
        crossings.append(float(t))
        last = t
    return Unfolding(g, p, q, length, inside, tuple(crossings))
