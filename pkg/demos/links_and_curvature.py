"""Links, girth and curvature at vertices.

The link of a vertex has one node per incident edge and one arc per square
corner there. Gromov's condition asks every link to have girth at least 4;
for a surface-like vertex this says the angle total is at least 2 pi.
"""

from sqc import curvature_report, is_npc, link_girth
from sqc.core import SquareComplex
from sqc.generators import cube3skel, cubecorner, grid


def wheel(n: int) -> SquareComplex:
    """n squares around a centre vertex 0."""
    spokes = list(range(1, n + 1))
    edges = [(0, s) for s in spokes]
    squares = []
    for i, s in enumerate(spokes):
        t = spokes[(i + 1) % n]
        corner = n + 1 + i
        edges += [(s, corner), (corner, t)]
        squares.append((0, s, corner, t))
    return SquareComplex.from_cells(range(2 * n + 1), edges, squares)


for name, K, v in [
    ("flat interior of a 2x2 grid", grid(2, 2), 4),
    ("cube corner", cubecorner(), 0),
    ("five squares around a vertex", wheel(5), 0),
    ("cube surface", cube3skel(), 0),
]:
    ok, _ = is_npc(K)
    print(f"{name}: link girth {link_girth(K, v)}, nonpositively curved: {ok}")

print("\nCurvature table for the five-square wheel (angles in multiples of pi):")
print(curvature_report(wheel(5)).table())

print("\nand for the cube, where every vertex has three corners:")
rep = curvature_report(cube3skel())
print(rep.table().splitlines()[1])
print("first vertex breaking the link condition:", rep.witness)
