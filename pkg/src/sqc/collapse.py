"""Elementary collapses, full collapse strategies, spines and ball filtrations.

A free edge is a side of exactly one square; collapsing it removes the edge
and that square (a 2->1 step). A free vertex is an endpoint of exactly one
edge and of no square; collapsing it removes the vertex and the edge (a 1->0
step). Both steps keep V - E + S unchanged.

The engine runs all 2->1 steps before any 1->0 step unless ``mixed=True``.
Strategies choose among the currently free pairs:

``first``
    smallest edge id, then smallest square (or vertex) id.
``random``
    uniform choice from the pairs in ``first`` order, drawn with
    :class:`sqc.rng.SplitMix64` seeded by ``seed``.
``boundary-first``
    prefer the free edge whose square has the most free sides.
``greedy-min-link``
    prefer the free edge whose endpoints carry the fewest square corners.

Sequence files look like::

    strategy first
    seed 1
    fingerprint <sha256 of the initial complex>
    final <sha256 of the final complex>
    c2 <edge-id> <square-id>
    c1 <vertex-id> <edge-id>

The fingerprint is SHA-256 of the sorted lines ``v id``, ``e id u v``
(``u <= v``) and ``s id c0 c1 c2 c3`` (canonical cycle) joined by newlines.
The ``final`` header is optional when reading.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import SquareComplex, ball, bfs_distances, euler_characteristic
from .rng import SplitMix64

__all__ = [
    "STRATEGIES",
    "NotFreeError",
    "FreeFacePair",
    "CollapseSequence",
    "CollapseResult",
    "Filtration",
    "FiltrationStep",
    "free_edges",
    "free_vertices",
    "is_free",
    "elementary_collapse",
    "collapse_all",
    "spine",
    "replay",
    "verify_sequence",
    "filtration",
    "format_sequence",
    "parse_sequence",
]

STRATEGIES = ("first", "random", "boundary-first", "greedy-min-link")


class NotFreeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FreeFacePair:
    """A face and its unique coface. ``dim`` is 2 for (edge, square), 1 for (vertex, edge)."""

    dim: int
    face: int
    coface: int

    def __str__(self):
        return f"c{self.dim} {self.face} {self.coface}"


@dataclass(frozen=True)
class CollapseSequence:
    steps: tuple[FreeFacePair, ...]
    initial_fingerprint: str
    final_fingerprint: str | None = None
    strategy: str = "first"
    seed: int = 0

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class CollapseResult:
    sequence: CollapseSequence
    final: SquareComplex

    @property
    def collapsed(self) -> bool:
        return self.final.is_point()

    def __iter__(self):
        # allows ``seq, final = collapse_all(...)``
        yield self.sequence
        yield self.final


def free_edges(K: SquareComplex) -> list[FreeFacePair]:
    return [
        FreeFacePair(2, e, sq[0]) for e, sq in sorted(K.edge_squares.items()) if len(sq) == 1
    ]


def free_vertices(K: SquareComplex) -> list[FreeFacePair]:
    out = []
    for v in sorted(K.vertices):
        es = K.vertex_edges[v]
        if len(es) == 1 and not K.vertex_squares[v]:
            out.append(FreeFacePair(1, v, es[0]))
    return out


def is_free(K: SquareComplex, pair: FreeFacePair) -> bool:
    if pair.dim == 2:
        return pair.face in K.edges and K.edge_squares[pair.face] == [pair.coface]
    if pair.dim == 1:
        return (
            pair.face in K.vertex_edges
            and K.vertex_edges[pair.face] == [pair.coface]
            and not K.vertex_squares[pair.face]
        )
    return False


def elementary_collapse(K: SquareComplex, pair: FreeFacePair) -> SquareComplex:
    if not is_free(K, pair):
        raise NotFreeError(f"pair ({pair}) is not free")
    if pair.dim == 2:
        return K.without(edges=[pair.face], squares=[pair.coface])
    return K.without(vertices=[pair.face], edges=[pair.coface])


class _State:
    """Mutable working copy used by the engine; rebuilt into a complex at the end."""

    def __init__(self, K: SquareComplex):
        self.K = K
        self.vertices = set(K.vertices)
        self.edges = dict(K.edges)
        self.squares = dict(K.squares)
        self.square_sides = {s: tuple(K.square_edges[s]) for s in K.squares}
        self.edge_sq = {e: set(sq) for e, sq in K.edge_squares.items()}
        self.vert_edges = {v: set(es) for v, es in K.vertex_edges.items()}
        self.corners = {v: len(sq) for v, sq in K.vertex_squares.items()}
        self.free_e = {e for e, sq in self.edge_sq.items() if len(sq) == 1}

    def free_vertex_pairs(self) -> list[FreeFacePair]:
        out = []
        for v in self.vertices:
            es = self.vert_edges[v]
            if len(es) == 1 and self.corners[v] == 0:
                out.append(FreeFacePair(1, v, next(iter(es))))
        return out

    def free_edge_pairs(self) -> list[FreeFacePair]:
        return [FreeFacePair(2, e, next(iter(self.edge_sq[e]))) for e in self.free_e]

    def apply(self, p: FreeFacePair):
        if p.dim == 2:
            s = p.coface
            for side in self.square_sides[s]:
                self.edge_sq[side].discard(s)
                if len(self.edge_sq[side]) == 1:
                    self.free_e.add(side)
                else:
                    self.free_e.discard(side)
            for x in self.squares[s]:
                self.corners[x] -= 1
            del self.squares[s]
            self._drop_edge(p.face)
        else:
            self._drop_edge(p.coface)
            self.vertices.discard(p.face)

    def _drop_edge(self, e):
        u, v = self.edges.pop(e)
        self.vert_edges[u].discard(e)
        self.vert_edges[v].discard(e)
        self.free_e.discard(e)
        del self.edge_sq[e]

    def complex(self) -> SquareComplex:
        return SquareComplex(
            tuple(v for v in self.K.vertices if v in self.vertices),
            self.edges,
            self.squares,
        )


def _order(pairs, strategy, state: _State, rng: SplitMix64):
    """Pick the next pair from a non-empty list."""
    # key: (edge id, square or vertex id)
    pairs = sorted(pairs, key=lambda p: (p.face, p.coface) if p.dim == 2 else (p.coface, p.face))
    if strategy == "first":
        return pairs[0]
    if strategy == "random":
        return rng.choice(pairs)
    if strategy == "boundary-first":
        def free_sides(p):
            if p.dim != 2:
                return 0
            return sum(1 for e in state.square_sides[p.coface] if e in state.free_e)
        # max() keeps the first of equal keys, i.e. the smallest edge id
        return max(pairs, key=free_sides)
    if strategy == "greedy-min-link":
        def corners(p):
            if p.dim != 2:
                return 0
            u, v = state.edges[p.face]
            return state.corners[u] + state.corners[v]
        return min(pairs, key=corners)
    raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")


def _run(K, strategy, seed, *, phases, mixed=False) -> CollapseResult:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    state = _State(K)
    rng = SplitMix64(seed)
    steps = []
    while True:
        if mixed and 1 in phases:
            pairs = state.free_edge_pairs() + state.free_vertex_pairs()
        else:
            pairs = state.free_edge_pairs()
            if not pairs and 1 in phases:
                pairs = state.free_vertex_pairs()
        if not pairs:
            break
        p = _order(pairs, strategy, state, rng)
        state.apply(p)
        steps.append(p)
    final = state.complex()
    seq = CollapseSequence(tuple(steps), K.fingerprint, final.fingerprint, strategy, seed)
    return CollapseResult(seq, final)


def collapse_all(
    K: SquareComplex, strategy: str = "first", seed: int = 0, *, mixed: bool = False
) -> CollapseResult:
    """Collapse until no free pair is left.

    Stalling is not an error: inspect ``result.final`` or ``result.collapsed``.
    """
    return _run(K, strategy, seed, phases=(2, 1), mixed=mixed)


def spine(K: SquareComplex, strategy: str = "first", seed: int = 0) -> SquareComplex:
    """Exhaust the 2->1 collapses only."""
    return _run(K, strategy, seed, phases=(2,)).final


def replay(K: SquareComplex, steps):
    """Yield the complex after each step, raising :class:`NotFreeError` on a bad step."""
    chi = euler_characteristic(K)
    cur = K
    for p in steps:
        cur = elementary_collapse(cur, p)
        assert euler_characteristic(cur) == chi
        yield p, cur


def verify_sequence(K: SquareComplex, seq: CollapseSequence) -> bool:
    if seq.initial_fingerprint != K.fingerprint:
        return False
    cur = K
    try:
        for _, cur in replay(K, seq.steps):
            pass
    except NotFreeError:
        return False
    return seq.final_fingerprint is None or seq.final_fingerprint == cur.fingerprint


def format_sequence(seq: CollapseSequence) -> str:
    lines = [f"strategy {seq.strategy}", f"seed {seq.seed}", f"fingerprint {seq.initial_fingerprint}"]
    if seq.final_fingerprint is not None:
        lines.append(f"final {seq.final_fingerprint}")
    lines += [str(p) for p in seq.steps]
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> CollapseSequence:
    header = {"strategy": "first", "seed": "0", "fingerprint": None, "final": None}
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split("#", 1)[0].split()
        if not tok:
            continue
        if tok[0] in header and len(tok) == 2:
            header[tok[0]] = tok[1]
        elif tok[0] in ("c1", "c2") and len(tok) == 3 and tok[1].isdigit() and tok[2].isdigit():
            steps.append(FreeFacePair(int(tok[0][1]), int(tok[1]), int(tok[2])))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if header["fingerprint"] is None:
        raise ValueError("sequence file lacks a fingerprint header")
    return CollapseSequence(
        tuple(steps), header["fingerprint"], header["final"], header["strategy"], int(header["seed"])
    )


@dataclass(frozen=True)
class FiltrationStep:
    radius: int
    ball: SquareComplex
    result: CollapseResult

    @property
    def collapsed(self) -> bool:
        return self.result.collapsed


@dataclass(frozen=True)
class Filtration:
    base: int
    steps: tuple[FiltrationStep, ...] = field(default_factory=tuple)

    @property
    def all_collapsed(self) -> bool:
        return all(s.collapsed for s in self.steps)

    def is_monotone(self) -> bool:
        for a, b in zip(self.steps, self.steps[1:]):
            A, B = a.ball, b.ball
            if not (
                set(A.vertices) <= set(B.vertices)
                and set(A.edges) <= set(B.edges)
                and set(A.squares) <= set(B.squares)
            ):
                return False
        return True


def filtration(K: SquareComplex, v: int, strategy: str = "first", seed: int = 0) -> Filtration:
    """Balls B_0 .. B_D around ``v`` (D its eccentricity), each run through the engine."""
    dist = bfs_distances(K, v)
    ecc = max(dist.values())
    steps = []
    for n in range(ecc + 1):
        B = ball(K, v, n)
        steps.append(FiltrationStep(n, B, collapse_all(B, strategy, seed)))
    return Filtration(v, tuple(steps))
