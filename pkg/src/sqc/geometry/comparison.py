"""Planar comparison triangles, Alexandrov's lemma and angle estimation.

Angles are computed with Kahan's needle-safe formula rather than a bare
``acos`` of the law of cosines, so near-degenerate triangles still sum to pi
to within a few ulps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "ComparisonReport",
    "StraightenReport",
    "AngleEstimate",
    "comparison_triangle",
    "comparison_angle",
    "alexandrov_straighten",
    "alexandrov_angle_limit",
    "REL_TOL",
]

REL_TOL = 1e-12


def _check_sides(a: float, b: float, c: float) -> None:
    for x in (a, b, c):
        if not math.isfinite(x) or x < 0:
            raise ValueError(f"side lengths must be finite and nonnegative, got {(a, b, c)}")
    m = max(a, b, c)
    if m - (a + b + c - m) > REL_TOL * m:
        raise ValueError(f"triangle inequality violated for sides {(a, b, c)}")


def _angle(c: float, a: float, b: float) -> float:
    """Angle opposite side ``c`` between sides ``a`` and ``b`` (Kahan)."""
    if a < b:
        a, b = b, a
    mu = c - (a - b) if b >= c else b - (a - c)
    num = ((a - b) + c) * mu
    den = (a + (b + c)) * ((a - c) + b)
    num = max(num, 0.0)
    if den <= 0.0:
        return math.pi if num > 0.0 else 0.0
    return 2.0 * math.atan(math.sqrt(num / den))


@dataclass(frozen=True)
class ComparisonReport:
    """Planar triangle with the given sides; ``angles[i]`` is opposite ``sides[i]``."""

    sides: tuple[float, float, float]
    angles: tuple[float, float, float]

    @property
    def angle_sum(self) -> float:
        return math.fsum(self.angles)

    @property
    def area(self) -> float:
        a, b, c = self.sides
        return 0.5 * a * b * math.sin(self.angles[2])


def comparison_triangle(l1: float, l2: float, l3: float) -> ComparisonReport:
    l1, l2, l3 = float(l1), float(l2), float(l3)
    _check_sides(l1, l2, l3)
    zeros = [x == 0.0 for x in (l1, l2, l3)]
    if all(zeros):
        raise ValueError("all sides are zero")
    if any(zeros):
        # one collapsed side: the other two coincide, the limit angles are 0, pi/2, pi/2
        angles = tuple(0.0 if z else math.pi / 2 for z in zeros)
    else:
        angles = (_angle(l1, l2, l3), _angle(l2, l1, l3), _angle(l3, l1, l2))
    return ComparisonReport((l1, l2, l3), angles)


def comparison_angle(d_pq: float, d_pr: float, d_qr: float) -> float:
    """Angle at p of the planar triangle with sides |pq|, |pr|, |qr|."""
    if d_pq == 0 or d_pr == 0:
        raise ValueError("comparison angle needs q and r distinct from p")
    return comparison_triangle(d_qr, d_pq, d_pr).angles[0]


@dataclass(frozen=True)
class StraightenReport:
    """Two triangles (A, B, C), (A, B', C) glued along AC, and their straightening.

    ``direction`` is ``ge`` when gamma + gamma' > pi, ``le`` when it is < pi
    and ``eq`` when it equals pi to within ``eq_tol``. ``checks`` maps each
    compared quantity to ``(straightened, original, holds)``.
    """

    alpha: float
    beta: float
    gamma: float
    alpha2: float
    beta2: float
    gamma2: float
    alpha_bar: float
    beta_bar: float
    beta2_bar: float
    ac: float
    ac_bar: float
    constructible: bool
    perimeter_ok: bool
    direction: str
    checks: dict = field(default_factory=dict)

    @property
    def angle_sum_at_c(self) -> float:
        return self.gamma + self.gamma2

    @property
    def all_hold(self) -> bool:
        ok = all(h for _, _, h in self.checks.values())
        return ok if self.direction == "eq" else ok and self.perimeter_ok


def alexandrov_straighten(tri1, tri2, *, tol: float = 1e-9, eq_tol: float = 1e-12) -> StraightenReport:
    """Straighten two glued planar triangles at C.

    ``tri1 = (|AB|, |BC|, |AC|)`` and ``tri2 = (|AB'|, |B'C|, |AC|)``. The
    straightened triangle has sides |AB|, |AB'| and |BC| + |CB'|, with C̄ on
    the last side at distance |BC| from B̄.
    """
    ab, bc, ac = map(float, tri1)
    ab2, b2c, ac2 = map(float, tri2)
    if abs(ac - ac2) > REL_TOL * max(ac, ac2):
        raise ValueError(f"shared side differs: {ac} vs {ac2}")
    if min(ab, bc, ac, ab2, b2c) <= 0:
        raise ValueError("the four points must be distinct")
    t1 = comparison_triangle(bc, ac, ab)  # angles at A, B, C
    t2 = comparison_triangle(b2c, ac, ab2)
    alpha, beta, gamma = t1.angles
    alpha2, beta2, gamma2 = t2.angles

    long_side = bc + b2c
    excess = gamma + gamma2 - math.pi
    if abs(excess) <= eq_tol:
        direction = "eq"
    else:
        direction = "ge" if excess > 0 else "le"

    constructible = long_side <= (ab + ab2) * (1 + REL_TOL)
    if constructible:
        bar = comparison_triangle(long_side, ab2, ab)  # angles at Ā, B̄, B̄'
        alpha_bar, beta_bar, beta2_bar = bar.angles
        # Stewart's theorem for the cevian from Ā to C̄
        sq = (b2c * ab * ab + bc * ab2 * ab2) / long_side - bc * b2c
        ac_bar = math.sqrt(max(sq, 0.0))
    else:
        alpha_bar = beta_bar = beta2_bar = ac_bar = math.nan

    if direction == "le":
        perimeter_ok = long_side >= ab + ab2 - tol
    else:
        perimeter_ok = long_side <= ab + ab2 + tol

    pairs = {
        "alpha": (alpha_bar, alpha + alpha2),
        "beta": (beta_bar, beta),
        "beta2": (beta2_bar, beta2),
        "ac": (ac_bar, ac),
    }
    checks = {}
    for name, (lhs, rhs) in pairs.items():
        if math.isnan(lhs):
            holds = False
        elif direction == "ge":
            holds = lhs >= rhs - tol
        elif direction == "le":
            holds = lhs <= rhs + tol
        else:
            holds = abs(lhs - rhs) <= tol
        checks[name] = (lhs, rhs, holds)

    return StraightenReport(
        alpha, beta, gamma, alpha2, beta2, gamma2,
        alpha_bar, beta_bar, beta2_bar, ac, ac_bar,
        constructible, perimeter_ok, direction, checks,
    )


@dataclass(frozen=True)
class AngleEstimate:
    angle: float
    comparison_angles: tuple[float, ...]
    max_decrease: float


def alexandrov_angle_limit(samples, *, tol: float = 1e-4) -> AngleEstimate:
    """Estimate the angle between two geodesics from chords d(c(t), c'(t)).

    ``samples`` is a list of ``(t, chord)`` with ``t`` strictly decreasing.
    The comparison angles ``2*asin(chord / 2t)`` must not increase as ``t``
    shrinks (by more than ``tol``); the estimate linearly extrapolates the two
    smallest-``t`` angles to ``t = 0``.
    """
    samples = [(float(t), float(d)) for t, d in samples]
    if not samples:
        raise ValueError("need at least one sample")
    ts = [t for t, _ in samples]
    if any(t <= 0 for t in ts) or any(a <= b for a, b in zip(ts, ts[1:])):
        raise ValueError("t values must be positive and strictly decreasing")
    angles = []
    for t, d in samples:
        ratio = d / (2 * t)
        if d < 0 or ratio > 1 + REL_TOL:
            raise ValueError(f"chord {d} exceeds 2t = {2 * t}")
        angles.append(2 * math.asin(min(ratio, 1.0)))
    # angles are listed from large t to small t; they should be non-increasing
    drops = [b - a for a, b in zip(angles, angles[1:])]
    worst = max(drops, default=0.0)
    if worst > tol:
        raise ValueError(
            f"comparison angle increases by {worst:.3g} as t decreases; not geodesics in a CAT(0) space"
        )
    if len(samples) == 1:
        est = angles[0]
    else:
        (t1, _), (t2, _) = samples[-2], samples[-1]
        a1, a2 = angles[-2], angles[-1]
        est = a2 - (a1 - a2) * t2 / (t1 - t2)
    return AngleEstimate(min(max(est, 0.0), math.pi), tuple(angles), max(worst, 0.0))
