"""Deterministic generators for test complexes.

Specs (also accepted by the command line)::

    grid R C              R x C block of unit squares
    torus R C             R x C grid with opposite sides identified (R, C >= 3)
    strip N               1 x N grid
    staircase N           squares (r, c) of the N x N grid with r + c < N
    cube3skel             2-skeleton of the 3-cube
    cubecorner            three squares around one vertex (link a 3-cycle)
    treeofsquares SEED N  N squares glued edge to edge along a random tree
    randomcat0 SEED N     N random anti-collapses starting from a point

``randomcat0`` only keeps expansions after which the complex is still valid
and CAT(0); a rejected expansion is resampled.
"""

from __future__ import annotations

import shlex

from .core import SquareComplex, bfs_distances, validate
from .curvature import check_cat0
from .rng import SplitMix64

__all__ = [
    "GENERATORS",
    "generate",
    "grid",
    "torus",
    "strip",
    "staircase",
    "cube3skel",
    "cubecorner",
    "tree_of_squares",
    "random_cat0",
    "grid_positions",
]


def _build(vertices, edges, squares) -> SquareComplex:
    return SquareComplex(
        tuple(vertices),
        {i: e for i, e in enumerate(edges)},
        {i: s for i, s in enumerate(squares)},
    )


def grid(rows: int, cols: int) -> SquareComplex:
    """Vertex ``r*(cols+1)+c`` sits at (x, y) = (c, r); squares are row major."""
    if rows < 0 or cols < 0:
        raise ValueError("grid dimensions must be nonnegative")
    vid = lambda r, c: r * (cols + 1) + c
    verts = [vid(r, c) for r in range(rows + 1) for c in range(cols + 1)]
    edges = [(vid(r, c), vid(r, c + 1)) for r in range(rows + 1) for c in range(cols)]
    edges += [(vid(r, c), vid(r + 1, c)) for r in range(rows) for c in range(cols + 1)]
    squares = [
        (vid(r, c), vid(r, c + 1), vid(r + 1, c + 1), vid(r + 1, c))
        for r in range(rows)
        for c in range(cols)
    ]
    return _build(verts, edges, squares)


def grid_positions(rows: int, cols: int) -> dict[int, tuple[int, int]]:
    return {r * (cols + 1) + c: (c, r) for r in range(rows + 1) for c in range(cols + 1)}


def torus(rows: int, cols: int) -> SquareComplex:
    if rows < 3 or cols < 3:
        raise ValueError("torus needs at least 3 rows and 3 columns")
    vid = lambda r, c: (r % rows) * cols + (c % cols)
    verts = list(range(rows * cols))
    edges = [(vid(r, c), vid(r, c + 1)) for r in range(rows) for c in range(cols)]
    edges += [(vid(r, c), vid(r + 1, c)) for r in range(rows) for c in range(cols)]
    squares = [
        (vid(r, c), vid(r, c + 1), vid(r + 1, c + 1), vid(r + 1, c))
        for r in range(rows)
        for c in range(cols)
    ]
    return _build(verts, edges, squares)


def strip(n: int) -> SquareComplex:
    return grid(1, n)


def staircase(n: int) -> SquareComplex:
    if n < 1:
        raise ValueError("staircase needs N >= 1")
    full = grid(n, n)
    keep = {sid for sid in full.squares if sum(divmod(sid, n)) < n}
    sides = {e for s in keep for e in full.square_edges[s]}
    used = {x for s in keep for x in full.squares[s]}
    renum = {v: i for i, v in enumerate(v for v in full.vertices if v in used)}
    return _build(
        renum.values(),
        [(renum[full.edges[e][0]], renum[full.edges[e][1]]) for e in sorted(sides)],
        [tuple(renum[x] for x in full.squares[s]) for s in sorted(keep)],
    )


def cube3skel() -> SquareComplex:
    verts = range(8)
    edges = [(v, v | b) for v in verts for b in (1, 2, 4) if not v & b]
    squares = []
    for fixed in (1, 2, 4):
        free = [b for b in (1, 2, 4) if b != fixed]
        for val in (0, fixed):
            a, b = free
            squares.append((val, val | a, val | a | b, val | b))
    return _build(verts, edges, squares)


def cubecorner() -> SquareComplex:
    # centre 0, spokes 1..3, outer corners 4..6
    edges = [(0, 1), (0, 2), (0, 3), (1, 4), (4, 2), (2, 5), (5, 3), (3, 6), (6, 1)]
    squares = [(0, 1, 4, 2), (0, 2, 5, 3), (0, 3, 6, 1)]
    return _build(range(7), edges, squares)


def tree_of_squares(seed: int, n: int) -> SquareComplex:
    """Start from one square; each further square gets two new vertices and is
    glued along a uniformly chosen existing edge (edges may branch)."""
    if n < 1:
        raise ValueError("treeofsquares needs N >= 1")
    rng = SplitMix64(seed)
    verts = [0, 1, 2, 3]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
    squares = [(0, 1, 2, 3)]
    for _ in range(n - 1):
        u, v = edges[rng.below(len(edges))]
        x, y = len(verts), len(verts) + 1
        verts += [x, y]
        edges += [(v, x), (x, y), (y, u)]
        squares.append((u, v, x, y))
    return _build(verts, edges, squares)


def _square_candidates(K: SquareComplex):
    """Paths u-x-y-w with d(u, w) = 3, each closable by a new edge and square."""
    nb = K.neighbors
    out = []
    for u in sorted(K.vertices):
        dist = bfs_distances(K, u)
        for x in sorted(nb[u]):
            for y in sorted(nb[x] - {u}):
                for w in sorted(nb[y] - {x}):
                    if w > u and dist.get(w) == 3:
                        out.append((u, x, y, w))
    return out


def random_cat0(seed: int, n: int, p_edge: float = 0.4) -> SquareComplex:
    """Grow a CAT(0) complex from a point by ``n`` elementary anti-collapses.

    Each step is either a 1-dimensional expansion (new vertex plus edge) or a
    2-dimensional one (close a path u-x-y-w with a new edge w-u and a square).
    """
    if n < 0:
        raise ValueError("randomcat0 needs N >= 0")
    rng = SplitMix64(seed)
    K = SquareComplex((0,))
    for _ in range(n):
        grown = None
        if K.edges and rng.random() >= p_edge:
            cands = _square_candidates(K)
            while cands and grown is None:
                u, x, y, w = cands.pop(rng.below(len(cands)))
                trial = SquareComplex(
                    K.vertices,
                    {**K.edges, max(K.edges) + 1: (w, u)},
                    {**K.squares, (max(K.squares) + 1 if K.squares else 0): (u, x, y, w)},
                )
                if validate(trial).ok and check_cat0(trial).is_cat0:
                    grown = trial
        if grown is None:
            anchor = K.vertices[rng.below(len(K.vertices))]
            new = max(K.vertices) + 1
            eid = max(K.edges) + 1 if K.edges else 0
            grown = SquareComplex(K.vertices + (new,), {**K.edges, eid: (anchor, new)}, K.squares)
        K = grown
    return K


GENERATORS = {
    "grid": (grid, 2),
    "torus": (torus, 2),
    "strip": (strip, 1),
    "staircase": (staircase, 1),
    "cube3skel": (cube3skel, 0),
    "cubecorner": (cubecorner, 0),
    "treeofsquares": (tree_of_squares, 2),
    "randomcat0": (random_cat0, 2),
}


def generate(spec) -> SquareComplex:
    """Build a complex from a spec string such as ``"grid 3 3"`` or a token list."""
    tokens = shlex.split(spec) if isinstance(spec, str) else [str(t) for t in spec]
    if not tokens or tokens[0] not in GENERATORS:
        raise ValueError(f"unknown generator; choose from {', '.join(GENERATORS)}")
    fn, arity = GENERATORS[tokens[0]]
    args = tokens[1:]
    if len(args) != arity:
        raise ValueError(f"{tokens[0]} takes {arity} integer argument(s), got {len(args)}")
    try:
        ints = [int(a) for a in args]
    except ValueError:
        raise ValueError(f"{tokens[0]}: arguments must be integers") from None
    return fn(*ints)
