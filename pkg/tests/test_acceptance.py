"""Acceptance criteria 1-9, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (also echoed
in the terminal summary) and then asserts. Tolerances are pinned as module
constants so a change to any of them shows up in review.
"""
import math
import random
import time

import pytest

import conftest
from filiform import ball as ball_mod
from filiform.ball import enumerate_ball
from filiform.conjugacy import (
    bfs_conjugators,
    cl_experiment,
    conjugate,
    random_word,
    shortest_conjugator_bfs,
    solve_conjugacy,
)
from filiform.errors import NoneWithin, NotConjugate
from filiform.group import epsilon, epsilon_bound, eval_word, gen_a, gen_t, multiply, phi_pow, power
from filiform.metric import compute_constants, exact_distance, short_word, size_lower_bound
from filiform.structure import bezout_bounded, centralizer, root_exact, zeta, zeta_image
from oracles import phi_iterated, random_element

# pinned tolerances
C1_RUNTIME = 60.0
C2_PAIRS = 10_000
C2_RUNTIME = 300.0
C3_BALL_RADIUS, C3_BFS_RADIUS, C3_RUNTIME = 3, 10, 600.0
C4_SAMPLES, C4_SEEDS, C4_STABILITY = 1000, (1, 2), 0.10
C5_PAIRS, C5_DECOMPOSED = 1000, 100
C6_RUNTIME = 1.0
C7_SPAN, C7_MAX_DIM = 50, 6
C8_RADIUS, C8_RUNTIME = 8, 600.0
C9_N, C9_SEEDS, C9_SAMPLES, C9_STABILITY, C9_SLOPE_TOL = range(4, 11), (0, 1), 50, 0.25, 0.10


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def relative_spread(a: float, b: float) -> float:
    return abs(a - b) / min(a, b)


@pytest.fixture(autouse=True)
def fresh_registry():
    ball_mod.clear_ball_registry()
    yield
    ball_mod.clear_ball_registry()


def test_criterion_1_lower_bound_family():
    start = time.perf_counter()
    problems = []
    for n in (2, 3, 4, 5):
        u = gen_a(2, 1)
        v = multiply(u, gen_a(2, 2, n * n))
        wit = solve_conjugacy(u, v)
        # any x with x^-1 a_1 x = a_1 a_2^k has t-exponent k, so |x| >= k
        if wit.conjugator != gen_t(2, n * n) or wit.word_length != n * n:
            problems.append(f"n={n}: witness {wit.conjugator} length {wit.word_length}")
        if conjugate(u, gen_t(2, n * n)) != v:
            problems.append(f"n={n}: t^(n^2) does not conjugate")
        if n in (2, 3):
            if shortest_conjugator_bfs(u, v, n * n) != gen_t(2, n * n):
                problems.append(f"n={n}: BFS disagrees")
            try:
                shortest_conjugator_bfs(u, v, n * n - 1)
                problems.append(f"n={n}: BFS found something shorter")
            except NoneWithin:
                pass
        if exact_distance(v, 4 * n + 1) > 4 * n + 1:
            problems.append(f"n={n}: |v| > 4n+1")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < C1_RUNTIME
    report(1, ok, f"min conjugator = n^2 for n=2..5, |v| <= 4n+1 ({elapsed:.1f}s) {problems}")
    assert ok


def test_criterion_2_solver_soundness():
    start = time.perf_counter()
    failures = 0
    for d in (2, 3, 4):
        rng = random.Random(200 + d)
        for _ in range(C2_PAIRS):
            u = eval_word(random_word(d, rng.randint(1, 10), rng))
            c = eval_word(random_word(d, rng.randint(1, 10), rng))
            v = conjugate(u, c)
            x = solve_conjugacy(u, v).conjugator
            if multiply(multiply(x.inverse(), u), x) != v:
                failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < C2_RUNTIME
    report(2, ok, f"{3 * C2_PAIRS} constructed pairs, {failures} failures ({elapsed:.1f}s)")
    assert ok


def test_criterion_3_oracle_equivalence():
    start = time.perf_counter()
    elems = [g for g, _ in enumerate_ball(2, C3_BALL_RADIUS).elements()]
    targets = set(elems)
    mismatches, positives = [], 0
    for u in elems:
        found = bfs_conjugators(u, C3_BFS_RADIUS, targets=targets)
        for v in elems:
            try:
                solve_conjugacy(u, v)
                verdict = True
            except NotConjugate:
                verdict = False
            positives += verdict
            if verdict != (v in found):
                mismatches.append((u, v))
    # the batched scan answers the same question as the single-pair search
    for u in elems[:8]:
        found = bfs_conjugators(u, C3_BFS_RADIUS, targets=targets)
        for v in elems:
            try:
                single = shortest_conjugator_bfs(u, v, C3_BFS_RADIUS)
            except NoneWithin:
                single = None
            if single != found.get(v):
                mismatches.append((u, v, "bfs"))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < C3_RUNTIME
    report(3, ok, f"{len(elems) ** 2} pairs ({positives} conjugate), {len(mismatches)} mismatches ({elapsed:.1f}s)")
    assert ok


def _k_run(seed: int) -> dict[int, float]:
    rng = random.Random(seed)
    worst: dict[int, float] = {}
    for _ in range(C4_SAMPLES):
        d = rng.randint(1, 4)
        p = rng.randint(1, 7)
        g = random_element(rng, d)
        n = len(short_word(power(g, p)))
        if n:
            worst[d] = max(worst.get(d, 0.0), len(short_word(g)) / n)
    return worst


def test_criterion_4_roots():
    rng = random.Random(400)
    round_trip_failures = 0
    for _ in range(C4_SAMPLES):
        d = rng.randint(1, 4)
        p = rng.randint(1, 7)
        g = random_element(rng, d)
        round_trip_failures += root_exact(power(g, p), p) != g
    elems = [g for g, _ in enumerate_ball(2, 6).elements()]
    collisions = 0
    for p in range(2, 8):
        powers = [power(h, p) for h in elems]
        collisions += len(powers) - len(set(powers))
    a, b = (_k_run(s) for s in C4_SEEDS)
    spreads = {d: relative_spread(a[d], b[d]) for d in a}
    stable = all(s <= C4_STABILITY for s in spreads.values())
    ok = round_trip_failures == 0 and collisions == 0 and stable
    report(
        4,
        ok,
        f"round trip failures={round_trip_failures}, uniqueness collisions={collisions}, "
        f"K_d seed{C4_SEEDS[0]}={_fmt(a)} seed{C4_SEEDS[1]}={_fmt(b)} spread={_fmt(spreads)} "
        f"(tolerance {C4_STABILITY:.0%})",
    )
    assert round_trip_failures == 0 and collisions == 0
    assert stable, f"K_d not stable across seeds: {spreads}"


def _fmt(values: dict) -> str:
    return "{" + ", ".join(f"{k}: {v:.3f}" for k, v in sorted(values.items())) + "}"


def test_criterion_5_zeta():
    rng = random.Random(500)
    additivity = divisibility = identities = 0
    pairs = decomposed = 0
    while pairs < C5_PAIRS or decomposed < C5_DECOMPOSED:
        d = rng.randint(1, 4)
        g = random_element(rng, d)
        desc = centralizer(g)
        if desc.kind != "rank-two":
            continue
        base, c = desc.generators
        zd = zeta_image(g)
        if decomposed < C5_DECOMPOSED:
            identities += zeta(g, gen_a(d, d, -1)) != zd.p * zd.q
            identities += zeta(g, zd.base) != zd.r * zd.q
            decomposed += 1
        for _ in range(10):
            x = multiply(power(base, rng.randint(-5, 5)), power(c, rng.randint(-20, 20)))
            y = multiply(power(base, rng.randint(-5, 5)), power(c, rng.randint(-20, 20)))
            zx, zy = zeta(g, x), zeta(g, y)
            additivity += zeta(g, multiply(x, y)) != zx + zy
            divisibility += bool(zx % zd.image_generator) + bool(zy % zd.image_generator)
            pairs += 1
    ok = additivity == divisibility == identities == 0
    report(5, ok, f"{pairs} pairs, {decomposed} decomposed elements: additivity={additivity}, "
                  f"identities={identities}, divisibility={divisibility} failures")
    assert ok


def test_criterion_6_bezout():
    start = time.perf_counter()
    failures = checked = 0
    for A in range(1, 201):
        for B in range(1, 201):
            if A == B or B % A == 0:
                continue
            lam, mu = bezout_bounded(A, B)
            checked += 1
            failures += not (lam * A - mu * B == math.gcd(A, B) and 0 < mu < A and 0 < lam <= B)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < C6_RUNTIME
    report(6, ok, f"{checked} pairs, {failures} failures ({elapsed:.2f}s)")
    assert ok


def test_criterion_7_phi_powers():
    failures = 0
    for d in range(1, C7_MAX_DIM + 1):
        for m in range(-C7_SPAN, C7_SPAN + 1):
            failures += phi_pow(d, m).tolist() != phi_iterated(d, m)
    bound_failures = 0
    for d in range(2, C7_MAX_DIM + 1):
        eps = epsilon_bound(d)
        for i in range(1, d):
            for m in range(-C7_SPAN, C7_SPAN + 1):
                bound_failures += abs(epsilon(d, i, m)) > eps * abs(m) ** (d - i)
    ok = failures == bound_failures == 0
    eps = {d: epsilon_bound(d) for d in range(2, C7_MAX_DIM + 1)}
    report(7, ok, f"matrix mismatches={failures}, epsilon bound failures={bound_failures}, eps_d={eps}")
    assert ok


def test_criterion_8_sandwich():
    start = time.perf_counter()
    ball = enumerate_ball(2, C8_RADIUS)
    violations, worst = 0, 0.0
    for g, _ in ball.elements():
        k = exact_distance(g, C8_RADIUS)
        upper = len(short_word(g))
        violations += not (size_lower_bound(g) <= k <= upper)
        if k:
            worst = max(worst, upper / k)
    elapsed = time.perf_counter() - start
    bound = compute_constants(2).C_d
    ok = violations == 0 and worst <= bound and elapsed < C8_RUNTIME
    report(8, ok, f"{len(ball)} elements, {violations} violations, max short/exact = {worst:.3f} "
                  f"(C_2 = {bound}) ({elapsed:.1f}s)")
    assert ok


def _max_ratio(dim: int, seed: int) -> float:
    recs = cl_experiment(dim, list(C9_N), mode="random-pairs", seed=seed, samples=C9_SAMPLES)
    assert all(conjugate(r.u, r.witness) == r.v for r in recs)
    return max(r.ratio for r in recs)


def test_criterion_9_witness_growth():
    ratios = {d: tuple(_max_ratio(d, s) for s in C9_SEEDS) for d in (2, 3)}
    spreads = {d: relative_spread(*r) for d, r in ratios.items()}
    bounded = all(math.isfinite(x) for r in ratios.values() for x in r)
    stable = all(s <= C9_STABILITY for s in spreads.values())
    fam = cl_experiment(2, list(C9_N))
    xs = [math.log(r.n) for r in fam]
    ys = [math.log(r.witness_length) for r in fam]
    n = len(xs)
    slope = (n * sum(x * y for x, y in zip(xs, ys)) - sum(xs) * sum(ys)) / (n * sum(x * x for x in xs) - sum(xs) ** 2)
    slope_ok = abs(slope - 2) <= C9_SLOPE_TOL * 2
    ok = bounded and stable and slope_ok
    report(9, ok, f"max witness_len/n^d per seed {ratios}, spread={_fmt(spreads)} "
                  f"(tolerance {C9_STABILITY:.0%}), witness-family slope d=2: {slope:.3f}")
    assert bounded and slope_ok
    assert stable, f"max ratio not stable across seeds: {spreads}"
