"""Points of the piecewise-Euclidean realization |K|.

Textual form: ``v<vertex>``, ``<edge>:<t>`` or ``<square>:<x>,<y>``. Edge
coordinates run along the edge's declared vertex pair. Square coordinates
use the canonical frame: the first canonical vertex at the origin, the second
at (1, 0), the fourth at (0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import SquareComplex

__all__ = ["SurfacePoint", "square_frame"]


@dataclass(frozen=True)
class SurfacePoint:
    kind: str  # "vertex" | "edge" | "square"
    cell: int
    coords: tuple[float, ...] = ()

    def __post_init__(self):
        want = {"vertex": 0, "edge": 1, "square": 2}
        if self.kind not in want:
            raise ValueError(f"unknown carrier kind {self.kind!r}")
        if len(self.coords) != want[self.kind]:
            raise ValueError(f"{self.kind} point needs {want[self.kind]} coordinate(s)")
        if any(not 0.0 <= c <= 1.0 for c in self.coords):
            raise ValueError(f"coordinates {self.coords} outside [0, 1]")

    @classmethod
    def vertex(cls, v: int) -> "SurfacePoint":
        return cls("vertex", v)

    @classmethod
    def on_edge(cls, e: int, t: float) -> "SurfacePoint":
        return cls("edge", e, (float(t),))

    @classmethod
    def in_square(cls, s: int, x: float, y: float) -> "SurfacePoint":
        return cls("square", s, (float(x), float(y)))

    @classmethod
    def parse(cls, text: str) -> "SurfacePoint":
        text = text.strip()
        try:
            if text.startswith("v"):
                return cls.vertex(int(text[1:]))
            cell, _, rest = text.partition(":")
            if not rest:
                raise ValueError
            if "," in rest:
                x, y = rest.split(",")
                return cls.in_square(int(cell), float(x), float(y))
            return cls.on_edge(int(cell), float(rest))
        except ValueError as exc:
            raise ValueError(
                f"bad point {text!r}; use v<id>, <edge>:<t> or <square>:<x>,<y>"
            ) from exc

    def __str__(self):
        if self.kind == "vertex":
            return f"v{self.cell}"
        return f"{self.cell}:" + ",".join(f"{c:g}" for c in self.coords)

    def check(self, K: SquareComplex) -> None:
        table = {"vertex": K.vertex_edges, "edge": K.edges, "square": K.squares}[self.kind]
        if self.cell not in table:
            raise KeyError(f"no {self.kind} {self.cell} in the complex")

    def local_in_square(self, K: SquareComplex, sid: int) -> tuple[float, float]:
        """Coordinates of this point in the canonical frame of square ``sid``."""
        c = K.squares[sid]
        corner = {c[0]: (0.0, 0.0), c[1]: (1.0, 0.0), c[2]: (1.0, 1.0), c[3]: (0.0, 1.0)}
        if self.kind == "square":
            if self.cell != sid:
                raise ValueError(f"point {self} is not in square {sid}")
            return self.coords
        if self.kind == "vertex":
            if self.cell not in corner:
                raise ValueError(f"vertex {self.cell} is not a corner of square {sid}")
            return corner[self.cell]
        u, v = K.edges[self.cell]
        if u not in corner or v not in corner or self.cell not in K.square_edges[sid]:
            raise ValueError(f"edge {self.cell} is not a side of square {sid}")
        (x0, y0), (x1, y1) = corner[u], corner[v]
        t = self.coords[0]
        return (x0 + t * (x1 - x0), y0 + t * (y1 - y0))

    def squares(self, K: SquareComplex) -> list[int]:
        """Squares whose closure contains the point."""
        if self.kind == "square":
            return [self.cell]
        if self.kind == "edge":
            return list(K.edge_squares[self.cell])
        return list(K.vertex_squares[self.cell])


def square_frame(K: SquareComplex, sid: int):
    """Canonical cycle of ``sid`` with the local position of each corner."""
    c = K.squares[sid]
    return list(zip(c, [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]))
