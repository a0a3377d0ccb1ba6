"""Small complexes built by hand for tests."""

from __future__ import annotations

from sqc.core import SquareComplex


def from_squares(squares, extra_edges=()) -> SquareComplex:
    """Complex spanned by the given square cycles plus extra edges."""
    verts = sorted({v for c in squares for v in c} | {v for e in extra_edges for v in e})
    edges = []
    seen = set()
    for c in squares:
        for i in range(4):
            p = tuple(sorted((c[i], c[(i + 1) % 4])))
            if p not in seen:
                seen.add(p)
                edges.append(p)
    for e in extra_edges:
        p = tuple(sorted(e))
        if p not in seen:
            seen.add(p)
            edges.append(p)
    return SquareComplex.from_cells(verts, edges, squares)


def wheel(n: int) -> SquareComplex:
    """n squares around vertex 0; spokes 1..n, outer corners n+1..2n."""
    return from_squares([(0, i, n + i, i % n + 1) for i in range(1, n + 1)])
