"""DOT and SVG output for figures.

DOT covers any 1-skeleton or vertex link. SVG is limited to complexes that
lay out on the integer lattice with every square a unit cell, which covers
grids, strips, staircases and their subcomplexes.
"""

from __future__ import annotations

from collections import deque

from .core import SquareComplex, is_connected, link_graph

__all__ = ["NotPlanarGridError", "to_dot", "link_to_dot", "grid_layout", "to_svg"]

_DIRECTIONS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class NotPlanarGridError(ValueError):
    pass


def to_dot(K: SquareComplex, name: str = "K") -> str:
    """Undirected DOT graph of the 1-skeleton; edge labels are edge ids."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    lines += [f"  {v};" for v in K.vertices]
    lines += [f'  {u} -- {v} [label="{e}"];' for e, (u, v) in sorted(K.edges.items())]
    lines.append("}")
    return "\n".join(lines) + "\n"


def link_to_dot(K: SquareComplex, v: int) -> str:
    """DOT graph of the link of ``v``: nodes are edges at v, arcs are square corners."""
    L = link_graph(K, v)
    lines = [f"graph link_{v} {{", f'  label="link of {v}: {L.classification}";']
    for e in L.nodes:
        a, b = K.edges[e]
        lines.append(f'  e{e} [label="{e} ({a}-{b})"];')
    lines += [f'  e{x} -- e{y} [label="{s}"];' for x, y, s in L.arcs]
    lines.append("}")
    return "\n".join(lines) + "\n"


def grid_layout(K: SquareComplex) -> dict[int, tuple[int, int]]:
    """Integer positions making every edge a unit segment and every square a unit cell.

    Squares are unfolded breadth first across shared edges; dangling edges
    take the first free lattice direction. Raises :class:`NotPlanarGridError`
    if no consistent layout results.
    """
    if not K.vertices:
        return {}
    if not is_connected(K):
        raise NotPlanarGridError("complex is disconnected")
    pos: dict[int, tuple[int, int]] = {}
    placed_squares: set[int] = set()

    def place(v, p):
        if v in pos and pos[v] != p:
            raise NotPlanarGridError(f"vertex {v} needs two positions {pos[v]} and {p}")
        pos[v] = p

    def unfold(start):
        c = K.squares[start]
        if not any(v in pos for v in c):
            for v, p in zip(c, ((0, 0), (1, 0), (1, 1), (0, 1))):
                place(v, p)
        placed_squares.add(start)
        queue = deque([start])
        while queue:
            s = queue.popleft()
            cyc = K.squares[s]
            cx = sum(pos[v][0] for v in cyc) / 4
            cy = sum(pos[v][1] for v in cyc) / 4
            for e in K.square_edges[s]:
                x, y = K.edges[e]
                (x0, y0), (x1, y1) = pos[x], pos[y]
                nx, ny = -(y1 - y0), x1 - x0
                if nx * (x0 - cx) + ny * (y0 - cy) < 0:
                    nx, ny = -nx, -ny
                for t in K.edge_squares[e]:
                    if t in placed_squares:
                        continue
                    nxt = K.squares[t]
                    for a, (ax, ay) in ((x, (x0, y0)), (y, (x1, y1))):
                        j = nxt.index(a)
                        for nb in (nxt[(j + 1) % 4], nxt[(j - 1) % 4]):
                            if nb not in (x, y):
                                place(nb, (ax + nx, ay + ny))
                    placed_squares.add(t)
                    queue.append(t)

    # grow from squares first, then hang dangling edges off placed vertices
    for s in sorted(K.squares):
        if s not in placed_squares:
            if pos and not any(v in pos for v in K.squares[s]):
                continue
            unfold(s)
    if not pos:
        pos[K.vertices[0]] = (0, 0)
    changed = True
    while changed:
        changed = False
        for s in sorted(K.squares):
            if s not in placed_squares and any(v in pos for v in K.squares[s]):
                corner = next(v for v in K.squares[s] if v in pos)
                raise NotPlanarGridError(
                    f"square {s} meets the layout only at vertex {corner}; no planar grid layout"
                )
        for e, (u, v) in sorted(K.edges.items()):
            if (u in pos) == (v in pos):
                continue
            a, b = (u, v) if u in pos else (v, u)
            taken = set(pos.values())
            free = [(pos[a][0] + dx, pos[a][1] + dy) for dx, dy in _DIRECTIONS]
            free = [p for p in free if p not in taken]
            if not free:
                raise NotPlanarGridError(f"no room to place vertex {b}")
            # prefer a spot next to the other neighbours already placed
            placed = [pos[w] for w in K.neighbors[b] if w in pos]
            pos[b] = max(free, key=lambda p: sum(abs(p[0] - x) + abs(p[1] - y) == 1 for x, y in placed))
            changed = True
            for s in sorted(K.vertex_squares[b]):
                if s not in placed_squares:
                    raise NotPlanarGridError(f"square {s} reached only through a dangling edge")
    for v in K.vertices:
        if v not in pos:
            raise NotPlanarGridError(f"vertex {v} could not be placed")

    seen: dict[tuple[int, int], int] = {}
    for v, p in pos.items():
        if p in seen:
            raise NotPlanarGridError(f"vertices {seen[p]} and {v} land on the same point {p}")
        seen[p] = v
    for e, (u, v) in K.edges.items():
        (x0, y0), (x1, y1) = pos[u], pos[v]
        if abs(x0 - x1) + abs(y0 - y1) != 1:
            raise NotPlanarGridError(f"edge {e} is not a unit lattice segment")
    cells = set()
    for s, cyc in K.squares.items():
        xs = sorted(pos[v][0] for v in cyc)
        ys = sorted(pos[v][1] for v in cyc)
        cell = (xs[0], ys[0])
        if xs != [cell[0]] * 2 + [cell[0] + 1] * 2 or ys != [cell[1]] * 2 + [cell[1] + 1] * 2:
            raise NotPlanarGridError(f"square {s} is not a unit lattice cell")
        if cell in cells:
            raise NotPlanarGridError(f"two squares occupy the cell at {cell}")
        cells.add(cell)
    return pos


def to_svg(K: SquareComplex, scale: int = 60, margin: int = 20, labels: bool = True) -> str:
    pos = grid_layout(K)
    if not pos:
        raise NotPlanarGridError("empty complex")
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    x_min, y_max = min(xs), max(ys)
    width = (max(xs) - x_min) * scale + 2 * margin
    height = (y_max - min(ys)) * scale + 2 * margin

    def at(v):
        x, y = pos[v]
        return margin + (x - x_min) * scale, margin + (y_max - y) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for s, cyc in sorted(K.squares.items()):
        pts = " ".join(f"{x},{y}" for x, y in map(at, cyc))
        out.append(f'  <polygon points="{pts}" fill="#dbe8f5" stroke="none"><title>square {s}</title></polygon>')
    for e, (u, v) in sorted(K.edges.items()):
        (x0, y0), (x1, y1) = at(u), at(v)
        out.append(
            f'  <line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#234" stroke-width="2">'
            f"<title>edge {e}</title></line>"
        )
    for v in K.vertices:
        x, y = at(v)
        out.append(f'  <circle cx="{x}" cy="{y}" r="4" fill="#234"/>')
        if labels:
            out.append(f'  <text x="{x + 5}" y="{y - 5}" font-size="11" font-family="sans-serif">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
