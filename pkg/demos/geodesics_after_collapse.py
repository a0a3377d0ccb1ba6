"""Shortest routes after removing a square through its free edge.

In a 2x2 grid, removing the top-right square with its free right side
leaves an L-shape; a route that used to cut across the missing square now
bends at the inner corner (pattern A). In a strip of three squares, losing
the middle square and its bottom edge forces routes over both top corners
(pattern B). Mesh distances on a 32-step lattice confirm both.
"""

from sqc.generators import cubecorner, grid
from sqc.geometry import SurfacePoint, check_collapsed_geodesic, sample_cat0

P = SurfacePoint.parse

for title, K, sigma, e, p, q in [
    ("L-shape", grid(2, 2), 3, 11, "1:0.5,0.7", "2:0.7,0.5"),
    ("strip", grid(1, 3), 1, 1, "0:0.5,0.3", "2:0.5,0.8"),
]:
    rep = check_collapsed_geodesic(K, sigma, e, P(p), P(q))
    print(f"{title}: pattern {rep.case}, labels {rep.labels}")
    print(f"  before {rep.d_full:.4f}, after {rep.d_collapsed:.4f}")
    print(f"  through a {rep.via_a:.4f}, through a and h {rep.via_ah:.4f}\n")

print("Sampling the CAT(0) inequality on 300 random triangles:")
L = sample_cat0(grid(2, 2), removed_squares=(3,), removed_edges=(11,), n_triangles=300)
print(f"  L-shape: {len(L.violations)} violations")
C = sample_cat0(cubecorner(), n_triangles=300)
print(f"  cube corner: {len(C.violations)} violations, e.g.\n    {C.violations[0]}")
