"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines appear
in the output even without ``-s``.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from sqc.collapse import STRATEGIES, collapse_all, filtration, free_edges, replay
from sqc.curvature import NOT_MEDIAN, NOT_NPC, check_cat0, curvature_report, is_npc, link_girth
from sqc.generators import cube3skel, cubecorner, grid, random_cat0, staircase, torus, tree_of_squares
from sqc.geometry import (
    SurfacePoint,
    alexandrov_straighten,
    build_mesh,
    check_collapsed_geodesic,
    mesh_distance,
    sample_cat0,
    through_square,
)
from test_comparison import planar_oracle, random_pair

S = SurfacePoint.in_square


@pytest.fixture
def verdict(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")

    return emit


@pytest.fixture(scope="module")
def corpus():
    out = [(f"grid {m} {n}", grid(m, n)) for m in range(1, 7) for n in range(1, 7)]
    out += [(f"staircase {n}", staircase(n)) for n in range(1, 11)]
    out += [(f"treeofsquares {s} 30", tree_of_squares(s, 30)) for s in range(1, 11)]
    out += [(f"randomcat0 {s} 40", random_cat0(s, 40)) for s in range(1, 21)]
    return out


def test_criterion_1_collapse_to_a_point(corpus, verdict):
    t0 = time.perf_counter()
    bad = []
    runs = 0
    for name, K in corpus:
        if not check_cat0(K).is_cat0:
            bad.append(f"{name} not CAT0")
            continue
        want = len(K.squares) + len(K.vertices) - 1
        for strategy in STRATEGIES:
            for seed in range(10):
                runs += 1
                res = collapse_all(K, strategy, seed)
                if not res.collapsed or len(res.sequence) != want:
                    bad.append(f"{name} {strategy} {seed}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 60
    verdict(1, ok, f"{len(corpus)} complexes, {runs} runs, {len(bad)} failures, {elapsed:.1f} s")
    assert not bad, bad[:5]
    assert elapsed <= 60


def test_criterion_2_negative_controls(verdict):
    T = torus(4, 4)
    seq, final = collapse_all(T)
    torus_verdict = check_cat0(T).kind
    cube = check_cat0(cube3skel())
    sample = sample_cat0(cubecorner(), n_triangles=500, k=32, tolerance=0.05, seed=0)
    parts = {
        "torus NPC": is_npc(T)[0],
        f"torus {NOT_MEDIAN} (got {torus_verdict})": torus_verdict == NOT_MEDIAN,
        "torus no free edge": not free_edges(T),
        "torus stalls": len(seq) == 0 and final == T,
        "cube3skel NotNPC girth 3": cube.kind == NOT_NPC and link_girth(cube3skel(), cube.witness) == 3,
        f"cubecorner {len(sample.violations)} violations": len(sample.violations) >= 1,
    }
    ok = all(parts.values())
    verdict(2, ok, "; ".join(f"{k}: {'ok' if v else 'no'}" for k, v in parts.items()))
    assert ok, [k for k, v in parts.items() if not v]


def test_criterion_3_nonpositive_curvature_and_free_edges(corpus, verdict):
    bad = []
    steps = 0
    for name, K in corpus:
        rep = curvature_report(K)
        if any(r.omega_pi is not None and r.omega_pi > 0 for r in rep.vertices):
            bad.append(f"{name}: positive curvature")
        if K.squares and not free_edges(K):
            bad.append(f"{name}: no free edge")
        seq, _ = collapse_all(K, "random", 0)
        for p, L in replay(K, seq.steps):
            if p.dim != 2:
                break
            steps += 1
            if not is_npc(L)[0]:
                bad.append(f"{name}: not NPC after {p}")
                break
    verdict(3, not bad, f"{len(corpus)} complexes, {steps} intermediate complexes checked, {len(bad)} failures")
    assert not bad, bad[:5]


def equality_pairs(rng, n):
    """Glued pairs with B, C, B' collinear, so gamma + gamma' = pi exactly in the plane."""
    out = []
    while len(out) < n:
        p, q = rng.uniform(0.3, 2, size=2)
        A = np.array([rng.uniform(-2, 2), rng.uniform(0.3, 2)])
        B, B2 = np.array([-p, 0.0]), np.array([q, 0.0])
        ac = float(np.linalg.norm(A))
        out.append(((float(np.linalg.norm(A - B)), p, ac), (float(np.linalg.norm(A - B2)), q, ac)))
    return out


def test_criterion_4_alexandrov_lemma(verdict):
    rng = np.random.default_rng(2024)
    tally = {"ge": [0, 0], "le": [0, 0]}
    oracle_misses = 0
    not_constructible = 0
    for _ in range(10_000):
        tri1, tri2 = random_pair(rng)
        rep = alexandrov_straighten(tri1, tri2)
        if rep.constructible:
            ref = planar_oracle(tri1, tri2)
            oracle_misses += any(abs(getattr(rep, k) - v) > 1e-9 for k, v in ref.items())
        else:
            not_constructible += 1
        if rep.direction in tally:
            tally[rep.direction][0] += 1
            tally[rep.direction][1] += rep.all_hold
    eq_total = eq_ok = 0
    for tri1, tri2 in equality_pairs(rng, 1000):
        rep = alexandrov_straighten(tri1, tri2)
        if rep.direction != "eq":
            continue
        eq_total += 1
        eq_ok += all(abs(lhs - rhs) <= 1e-9 for lhs, rhs, _ in rep.checks.values())
    parts = {
        "oracle agreement": oracle_misses == 0,
        "gamma+gamma'>pi": tally["ge"][1] == tally["ge"][0],
        "gamma+gamma'<pi": tally["le"][1] == tally["le"][0],
        "equality": eq_total > 0 and eq_ok == eq_total,
    }
    detail = (
        f">pi {tally['ge'][1]}/{tally['ge'][0]} hold; <pi {tally['le'][1]}/{tally['le'][0]} hold "
        f"({not_constructible} not constructible); equality {eq_ok}/{eq_total}; "
        f"oracle mismatches {oracle_misses}"
    )
    ok = all(parts.values())
    verdict(4, ok, detail)
    assert ok, [k for k, v in parts.items() if not v]


def collapsed_instances(K, sigma, e, sP, sQ, case, seed, n=10):
    """Seeded P, Q pairs whose straight route crosses sigma in the given pattern."""
    rng = np.random.default_rng(seed)
    reports = []
    while len(reports) < n:
        P = S(sP, *rng.uniform(0.05, 0.95, size=2))
        Q = S(sQ, *rng.uniform(0.05, 0.95, size=2))
        if through_square(K, sigma, P, Q) is None:
            continue
        rep = check_collapsed_geodesic(K, sigma, e, P, Q, k=32, tolerance=0.05)
        if rep.case != case:
            continue
        assert set(rep.crossed_edges) <= set(K.square_edges[sigma])
        reports.append(rep)
    return reports


def test_criterion_5_collapsed_geodesics(verdict):
    t0 = time.perf_counter()
    case_a = collapsed_instances(grid(2, 2), 3, 11, 1, 2, "A", seed=5)
    case_b = collapsed_instances(grid(1, 3), 1, 1, 0, 2, "B", seed=6)
    elapsed = time.perf_counter() - t0
    a_ok = sum(r.matches_a for r in case_a)
    b_ok = sum(r.matches_ah for r in case_b)
    worst = max(
        [abs(r.via_a - r.d_collapsed) / r.d_collapsed for r in case_a]
        + [abs(r.via_ah - r.d_collapsed) / r.d_collapsed for r in case_b]
    )
    ok = a_ok == len(case_a) and b_ok == len(case_b) and elapsed <= 30
    verdict(5, ok, f"case A {a_ok}/{len(case_a)}, case B {b_ok}/{len(case_b)}, worst rel. gap {worst:.2e}, {elapsed:.1f} s")
    assert ok


def test_criterion_6_collapsed_grid_is_cat0(verdict):
    K = grid(2, 2)
    # the free face is edge 11 of square 3; both leave together
    rep = sample_cat0(K, removed_squares=(3,), removed_edges=(11,), n_triangles=500, k=32, tolerance=0.05, seed=0)
    verdict(6, rep.ok, f"{rep.n_checked} triangles checked, {len(rep.violations)} violations, max ratio {rep.max_ratio:.3f}")
    assert rep.ok


def test_criterion_7_filtrations(corpus, verdict):
    rng = np.random.default_rng(7)
    bad = []
    balls = 0
    for name, K in corpus:
        v = K.vertices[int(rng.integers(len(K.vertices)))]
        F = filtration(K, v, "random", int(rng.integers(2**31)))
        balls += len(F.steps)
        if not (F.all_collapsed and F.is_monotone()):
            bad.append(f"{name} from {v}")
    verdict(7, not bad, f"{len(corpus)} filtrations, {balls} balls, {len(bad)} failures")
    assert not bad, bad


def test_criterion_8_mesh_calibration(verdict):
    cases = {
        "sqrt2": (grid(1, 1), 0, 3, math.sqrt(2)),
        "sqrt5": (grid(1, 2), 0, 5, math.sqrt(5)),
    }
    parts = {}
    details = []
    for name, (K, a, b, exact) in cases.items():
        errs = []
        for k in (8, 16, 32):
            d, _ = mesh_distance(build_mesh(K, k), SurfacePoint.vertex(a), SurfacePoint.vertex(b))
            errs.append(abs(d - exact) / exact)
        # rounding noise aside, the error must not grow with k
        monotone = all(e2 <= e1 + 1e-12 for e1, e2 in zip(errs, errs[1:]))
        parts[name] = monotone and errs[-1] <= 0.03
        details.append(f"{name} errors " + ", ".join(f"{e:.1e}" for e in errs))
    ok = all(parts.values())
    verdict(8, ok, "; ".join(details))
    assert ok
