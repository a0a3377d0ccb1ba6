"""Straightening two glued triangles.

Glue planar triangles ABC and AB'C along AC and flatten the hinge at C: the
new triangle has sides |AB|, |AB'| and |BC| + |CB'|. When the angle at C is
at least pi the apex angle grows and the other angles follow suit. The
mirrored statement for an angle below pi is not true as stated: the apex
angle still grows, and often the straightened triangle does not exist.
"""

import numpy as np

from sqc.geometry import alexandrov_straighten


def show(label, tri1, tri2):
    r = alexandrov_straighten(tri1, tri2)
    print(f"{label}: gamma + gamma' = {r.angle_sum_at_c:.4f}, branch {r.direction}")
    if not r.constructible:
        print("  the straightened triangle cannot be built")
    for name, (bar, orig, holds) in r.checks.items():
        print(f"  {name:<6} straightened {bar:.4f}  original {orig:.4f}  {'holds' if holds else 'FAILS'}")


# B and B' far out on a nearly straight line through C: angle at C above pi
show("reflex hinge", (3.2, 3.0, 1.0), (3.1, 2.9, 1.0))
# a convex kite: angle at C below pi
show("convex kite", (2.0, 1.2, 2.5), (2.1, 1.3, 2.5))

rng = np.random.default_rng(0)
grew = total = 0
for _ in range(2000):
    ac = rng.uniform(0.5, 2)
    ab, bc, ab2, b2c = rng.uniform(0.5, 2, size=4)
    if not (abs(ab - bc) < ac < ab + bc and abs(ab2 - b2c) < ac < ab2 + b2c):
        continue
    r = alexandrov_straighten((ab, bc, ac), (ab2, b2c, ac))
    if r.direction == "le" and r.constructible:
        total += 1
        grew += r.alpha_bar >= r.alpha + r.alpha2 - 1e-9
print(f"\nangle below pi, constructible: apex angle grew in {grew} of {total} cases")
