"""Finite square 2-complexes: data model, text format, validation, links and balls.

A complex is immutable. Every operation that "changes" a complex builds a new
one, so instances can be shared freely between threads.

The ``.sqc`` text format is line oriented::

    # comment
    v 0
    v 1
    e 0 0 1
    s 0 0 1 2 3

``v <id>`` declares a vertex, ``e <id> <v1> <v2>`` an edge and
``s <id> <v1> <v2> <v3> <v4>`` a square by its boundary cycle.
"""

from __future__ import annotations

import hashlib
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "ParseError",
    "SquareComplex",
    "LinkGraph",
    "Violation",
    "ValidationReport",
    "canonical_cycle",
    "parse_complex",
    "serialize_complex",
    "read_complex",
    "validate",
    "link_graph",
    "euler_characteristic",
    "bfs_distances",
    "is_connected",
    "ball",
]


class ParseError(ValueError):
    """Raised for malformed ``.sqc`` documents; carries a 1-based position."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, int, int, int]:
    """Lexicographically smallest of the 8 rotations/reflections of a 4-cycle."""
    if len(cycle) != 4:
        raise ValueError(f"a square needs 4 vertices, got {len(cycle)}")
    c = tuple(cycle)
    r = c[::-1]
    return min(min(c[i:] + c[:i], r[i:] + r[:i]) for i in range(4))


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, eq=False)
class SquareComplex:
    """A finite square 2-complex given by explicit vertices, edges and squares.

    ``edges`` maps edge id to its declared (ordered) vertex pair and
    ``squares`` maps square id to its canonical boundary cycle. Mapping order
    is declaration order and is the serialization order.
    """

    vertices: tuple[int, ...]
    edges: Mapping[int, tuple[int, int]] = field(default_factory=dict)
    squares: Mapping[int, tuple[int, int, int, int]] = field(default_factory=dict)

    def __post_init__(self):
        verts = tuple(int(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex id")
        vset = set(verts)
        edges = {}
        for eid, (u, v) in dict(self.edges).items():
            if u not in vset or v not in vset:
                raise ValueError(f"edge {eid} references an undeclared vertex")
            edges[int(eid)] = (int(u), int(v))
        squares = {}
        for sid, cyc in dict(self.squares).items():
            if any(x not in vset for x in cyc):
                raise ValueError(f"square {sid} references an undeclared vertex")
            squares[int(sid)] = canonical_cycle([int(x) for x in cyc])
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "squares", squares)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_cells(
        cls,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]],
        squares: Iterable[Sequence[int]] = (),
    ) -> "SquareComplex":
        """Build a complex numbering edges and squares by position."""
        return cls(
            tuple(vertices),
            {i: tuple(e) for i, e in enumerate(edges)},
            {i: tuple(s) for i, s in enumerate(squares)},
        )

    def without(self, vertices=(), edges=(), squares=()) -> "SquareComplex":
        """Copy of the complex with the given cells removed (no consistency check)."""
        vs, es, ss = set(vertices), set(edges), set(squares)
        return SquareComplex(
            tuple(v for v in self.vertices if v not in vs),
            {e: p for e, p in self.edges.items() if e not in es},
            {s: c for s, c in self.squares.items() if s not in ss},
        )

    # -- derived incidence ----------------------------------------------------

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        """Unordered vertex pair -> edge id (first declared wins)."""
        index: dict[tuple[int, int], int] = {}
        for eid, (u, v) in self.edges.items():
            index.setdefault(_pair(u, v), eid)
        return index

    def edge_between(self, u: int, v: int) -> int | None:
        return self.edge_index.get(_pair(u, v))

    @cached_property
    def square_edges(self) -> dict[int, tuple[int | None, ...]]:
        """Square id -> ids of its 4 sides in cycle order (None if undeclared)."""
        out = {}
        for sid, c in self.squares.items():
            out[sid] = tuple(self.edge_between(c[i], c[(i + 1) % 4]) for i in range(4))
        return out

    @cached_property
    def edge_squares(self) -> dict[int, list[int]]:
        """Edge id -> ids of the squares having it as a side."""
        out: dict[int, list[int]] = {e: [] for e in self.edges}
        for sid, sides in self.square_edges.items():
            for e in sides:
                if e is not None and sid not in out[e]:
                    out[e].append(sid)
        return out

    @cached_property
    def vertex_edges(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for eid, (u, v) in self.edges.items():
            out[u].append(eid)
            if v != u:
                out[v].append(eid)
        return out

    @cached_property
    def vertex_squares(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for sid, c in self.squares.items():
            for x in dict.fromkeys(c):
                out[x].append(sid)
        return out

    @cached_property
    def neighbors(self) -> dict[int, set[int]]:
        """Adjacency of the 1-skeleton."""
        out: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges.values():
            if u != v:
                out[u].add(v)
                out[v].add(u)
        return out

    def corner_count(self, v: int) -> int:
        """Number of square corners at ``v``."""
        return len(self.vertex_squares[v])

    # -- summaries ------------------------------------------------------------

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.squares)

    @property
    def dimension(self) -> int:
        if self.squares:
            return 2
        if self.edges:
            return 1
        return 0 if self.vertices else -1

    def is_point(self) -> bool:
        return len(self.vertices) == 1 and not self.edges and not self.squares

    @cached_property
    def fingerprint(self) -> str:
        """Order-independent SHA-256 over the sorted canonical cell lines."""
        lines = [f"v {v}" for v in self.vertices]
        lines += [f"e {e} {_pair(*p)[0]} {_pair(*p)[1]}" for e, p in self.edges.items()]
        lines += [f"s {s} " + " ".join(map(str, c)) for s, c in self.squares.items()]
        return hashlib.sha256("\n".join(sorted(lines)).encode()).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, SquareComplex):
            return NotImplemented
        return (
            set(self.vertices) == set(other.vertices)
            and {e: _pair(*p) for e, p in self.edges.items()}
            == {e: _pair(*p) for e, p in other.edges.items()}
            and dict(self.squares) == dict(other.squares)
        )

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        v, e, s = self.counts
        return f"SquareComplex(V={v}, E={e}, S={s})"


# -- text format ------------------------------------------------------------


def parse_complex(text: str) -> SquareComplex:
    """Parse a ``.sqc`` document. Squares are stored in canonical form."""
    vertices: list[int] = []
    vset: set[int] = set()
    edges: dict[int, tuple[int, int]] = {}
    pairs: set[tuple[int, int]] = set()
    squares: dict[int, tuple[int, ...]] = {}
    arity = {"v": 1, "e": 3, "s": 5}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = []
        pos = 0
        for tok in line.split():
            col = line.index(tok, pos)
            pos = col + len(tok)
            tokens.append((tok, col + 1))
        if not tokens:
            continue
        kind, kcol = tokens[0]
        if kind not in arity:
            raise ParseError(f"unknown record type {kind!r}", lineno, kcol)
        if len(tokens) - 1 != arity[kind]:
            col = tokens[min(len(tokens) - 1, arity[kind] + 1)][1] if len(tokens) > 1 else kcol
            raise ParseError(
                f"record {kind!r} takes {arity[kind]} integers, got {len(tokens) - 1}", lineno, col
            )
        nums = []
        for tok, col in tokens[1:]:
            if not tok.isdigit():
                raise ParseError(f"expected a nonnegative integer, got {tok!r}", lineno, col)
            nums.append((int(tok), col))

        if kind == "v":
            (vid, col), = nums
            if vid in vset:
                raise ParseError(f"duplicate vertex id {vid}", lineno, col)
            vset.add(vid)
            vertices.append(vid)
            continue

        (cid, idcol), refs = nums[0], nums[1:]
        for x, col in refs:
            if x not in vset:
                raise ParseError(f"undeclared vertex {x}", lineno, col)
        if kind == "e":
            if cid in edges:
                raise ParseError(f"duplicate edge id {cid}", lineno, idcol)
            u, v = refs[0][0], refs[1][0]
            edges[cid] = (u, v)
            pairs.add(_pair(u, v))
        else:
            if cid in squares:
                raise ParseError(f"duplicate square id {cid}", lineno, idcol)
            cyc = [x for x, _ in refs]
            for i in range(4):
                a, b = cyc[i], cyc[(i + 1) % 4]
                if _pair(a, b) not in pairs:
                    raise ParseError(
                        f"square {cid} uses undeclared edge ({a}, {b})", lineno, refs[i][1]
                    )
            squares[cid] = tuple(cyc)

    return SquareComplex(tuple(vertices), edges, squares)


def serialize_complex(K: SquareComplex) -> str:
    lines = [f"v {v}" for v in K.vertices]
    lines += [f"e {e} {u} {v}" for e, (u, v) in K.edges.items()]
    lines += [f"s {s} " + " ".join(map(str, c)) for s, c in K.squares.items()]
    return "\n".join(lines) + "\n"


def read_complex(path) -> SquareComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_complex(fh.read())


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    cells: tuple
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(K: SquareComplex) -> ValidationReport:
    """Check the cubical-complex rules; every violation names its cells.

    Rules: ``edge-loop``, ``edge-duplicate``, ``square-degenerate``,
    ``square-missing-edge``, ``square-duplicate``, ``multi-face``.
    """
    out: list[Violation] = []

    seen_pairs: dict[tuple[int, int], int] = {}
    for eid, (u, v) in K.edges.items():
        if u == v:
            out.append(Violation("edge-loop", (("e", eid),), f"edge {eid} joins vertex {u} to itself"))
            continue
        p = _pair(u, v)
        if p in seen_pairs:
            out.append(
                Violation(
                    "edge-duplicate",
                    (("e", seen_pairs[p]), ("e", eid)),
                    f"edges {seen_pairs[p]} and {eid} both join {p[0]} and {p[1]}",
                )
            )
        else:
            seen_pairs[p] = eid

    good_squares = []
    seen_forms: dict[tuple, int] = {}
    for sid, c in K.squares.items():
        if len(set(c)) != 4:
            out.append(
                Violation("square-degenerate", (("s", sid),), f"square {sid} repeats a vertex: {c}")
            )
            continue
        missing = [(c[i], c[(i + 1) % 4]) for i, e in enumerate(K.square_edges[sid]) if e is None]
        if missing:
            out.append(
                Violation(
                    "square-missing-edge",
                    (("s", sid),),
                    f"square {sid} has undeclared sides {missing}",
                )
            )
            continue
        if c in seen_forms:
            out.append(
                Violation(
                    "square-duplicate",
                    (("s", seen_forms[c]), ("s", sid)),
                    f"duplicate square: {seen_forms[c]} and {sid} have the same boundary {c}",
                )
            )
            continue
        seen_forms[c] = sid
        good_squares.append(sid)

    # square/square: the intersection must be empty, one vertex, or one common side
    good = set(good_squares)
    checked: set[tuple[int, int]] = set()
    for sid in good_squares:
        c = K.squares[sid]
        sides = {_pair(c[i], c[(i + 1) % 4]) for i in range(4)}
        for x in c:
            for tid in K.vertex_squares[x]:
                if tid == sid or tid not in good or (min(sid, tid), max(sid, tid)) in checked:
                    continue
                checked.add((min(sid, tid), max(sid, tid)))
                d = K.squares[tid]
                common = set(c) & set(d)
                if len(common) <= 1:
                    continue
                tsides = {_pair(d[i], d[(i + 1) % 4]) for i in range(4)}
                if len(common) == 2 and _pair(*common) in sides & tsides:
                    continue
                out.append(
                    Violation(
                        "multi-face",
                        (("s", sid), ("s", tid)),
                        f"cells share more than one face: squares {sid} and {tid} meet in vertices {sorted(common)}",
                    )
                )

    # square/edge: an edge with both ends on a square must be one of its sides
    for eid, (u, v) in K.edges.items():
        if u == v:
            continue
        for sid in set(K.vertex_squares[u]) & set(K.vertex_squares[v]):
            if sid not in good:
                continue
            c = K.squares[sid]
            sides = {_pair(c[i], c[(i + 1) % 4]) for i in range(4)}
            if _pair(u, v) not in sides:
                out.append(
                    Violation(
                        "multi-face",
                        (("s", sid), ("e", eid)),
                        f"cells share more than one face: edge {eid} is a diagonal of square {sid}",
                    )
                )
    return ValidationReport(tuple(out))


# -- links ------------------------------------------------------------------


@dataclass(frozen=True)
class LinkGraph:
    """Link of a vertex: nodes are incident edges, one arc per square corner.

    ``classification`` is one of ``cycle``, ``path``, ``disjoint-union`` or
    ``other``. An empty link (isolated vertex) counts as a disjoint union of
    zero components.
    """

    vertex: int
    nodes: tuple[int, ...]
    arcs: tuple[tuple[int, int, int], ...]  # (edge, edge, square)
    classification: str

    @property
    def is_cycle(self) -> bool:
        return self.classification == "cycle"

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {n: [] for n in self.nodes}
        for x, y, _ in self.arcs:
            adj[x].append(y)
            adj[y].append(x)
        return adj

    def girth(self) -> float:
        """Length of the shortest cycle, ``math.inf`` if the link is a forest."""
        seen: set[tuple[int, int]] = set()
        for x, y, _ in self.arcs:
            key = (min(x, y), max(x, y))
            if key in seen:
                return 2
            seen.add(key)
        adj = self.adjacency()
        best = math.inf
        for root in self.nodes:
            dist = {root: 0}
            parent = {root: None}
            queue = deque([root])
            while queue:
                x = queue.popleft()
                if 2 * dist[x] + 1 >= best:
                    break
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        queue.append(y)
                    elif parent[x] != y:
                        best = min(best, dist[x] + dist[y] + 1)
        return best


def _classify(nodes: Sequence[int], arcs: Sequence[tuple[int, int, int]]) -> str:
    if not nodes:
        return "disjoint-union"
    adj: dict[int, list[int]] = {n: [] for n in nodes}
    for x, y, _ in arcs:
        adj[x].append(y)
        adj[y].append(x)
    comps = []
    seen: set[int] = set()
    for n in nodes:
        if n in seen:
            continue
        comp = [n]
        seen.add(n)
        i = 0
        while i < len(comp):
            for y in adj[comp[i]]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
            i += 1
        comps.append(comp)

    def kind(comp):
        degs = [len(adj[x]) for x in comp]
        n_arcs = sum(degs) // 2
        if all(d == 2 for d in degs) and n_arcs == len(comp):
            return "cycle"
        if max(degs) <= 2 and n_arcs == len(comp) - 1:
            return "path"
        return "other"

    kinds = [kind(c) for c in comps]
    if len(comps) == 1:
        return kinds[0]
    return "disjoint-union" if "other" not in kinds else "other"


def link_graph(K: SquareComplex, v: int) -> LinkGraph:
    if v not in K.vertex_edges:
        raise KeyError(f"unknown vertex {v}")
    nodes = tuple(sorted(K.vertex_edges[v]))
    arcs = []
    for sid in K.vertex_squares[v]:
        c = K.squares[sid]
        i = c.index(v)
        e1 = K.edge_between(v, c[(i - 1) % 4])
        e2 = K.edge_between(v, c[(i + 1) % 4])
        if e1 is not None and e2 is not None:
            arcs.append((e1, e2, sid))
    arcs = tuple(arcs)
    return LinkGraph(v, nodes, arcs, _classify(nodes, arcs))


# -- invariants and balls ---------------------------------------------------


def euler_characteristic(K: SquareComplex) -> int:
    v, e, s = K.counts
    return v - e + s


def bfs_distances(K: SquareComplex, source: int) -> dict[int, int]:
    """Edge-path distances from ``source`` within its component."""
    if source not in K.neighbors:
        raise KeyError(f"unknown vertex {source}")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in K.neighbors[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def is_connected(K: SquareComplex) -> bool:
    if not K.vertices:
        return False
    return len(bfs_distances(K, K.vertices[0])) == len(K.vertices)


def ball(K: SquareComplex, v: int, n: int) -> SquareComplex:
    """Full subcomplex on the vertices within edge-path distance ``n`` of ``v``."""
    if n < 0:
        raise ValueError("radius must be nonnegative")
    dist = bfs_distances(K, v)
    keep = {x for x, d in dist.items() if d <= n}
    return SquareComplex(
        tuple(x for x in K.vertices if x in keep),
        {e: p for e, p in K.edges.items() if p[0] in keep and p[1] in keep},
        {s: c for s, c in K.squares.items() if all(x in keep for x in c)},
    )
