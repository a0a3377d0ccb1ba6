"""Growing balls around a vertex.

The full subcomplex on vertices within n edges of a base vertex is again
CAT(0), so every ball collapses to a point, and the balls are nested.
"""

from sqc import filtration
from sqc.generators import random_cat0

K = random_cat0(3, 30)
v = K.vertices[0]
F = filtration(K, v, "random", seed=1)
print(f"balls around vertex {v} in a random CAT(0) complex with {len(K.squares)} squares")
print(f"{'n':>3} {'V':>4} {'E':>4} {'S':>4}")
for step in F.steps:
    V, E, S = step.ball.counts
    print(f"{step.radius:>3} {V:>4} {E:>4} {S:>4}  {'collapses' if step.collapsed else 'stalls'}")
print("nested:", F.is_monotone())
