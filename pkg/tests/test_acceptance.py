"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction as F

import numpy as np
import pytest

from bosonic_polytope import (
    WeightVector,
    analytic_halfspaces,
    build_vertices,
    check_system,
    contains,
    count_lineups,
    domain_inclusion,
    generic_weights,
    in_minkowski_sum,
    minkowski_lift,
    numeric_facets,
)
from bosonic_polytope.oracle import (
    build_bose_hubbard,
    gok_bound_violation,
    gok_minimizer,
    reduce_1rdm,
    schur_horn_check,
    verify_trials,
)

from conftest import simplex_point

VERTEX_COUNTS = [1, 1, 2, 4, 8, 17, 37, 82, 184, 418, 967, 2278]
INEQ_COUNTS = [1, 2, 3, 5, 8]


def W(*xs):
    return WeightVector(tuple(F(x) for x in xs))


def report(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")


def test_criterion_1_vertex_counts(capsys):
    mismatches = []
    times = {}
    for offset in (1, 0):
        t0 = time.perf_counter()
        for r in range(1, 13):
            N = max(r - offset, 1)
            got = count_lineups(N, r, r)
            if got != VERTEX_COUNTS[r - 1]:
                mismatches.append((N, r, got))
        times[f"N=r-{offset}"] = round(time.perf_counter() - t0, 1)
    ok = not mismatches and max(times.values()) < 60
    report(capsys, 1, "lineup counts r=1..12", ok, f"mismatches={mismatches} seconds={times}")
    assert ok


def test_criterion_2_inequality_counts(capsys):
    t0 = time.perf_counter()
    counts = []
    for r in range(1, 6):
        p = build_vertices(max(r - 1, 1), r, generic_weights(r))
        counts.append(numeric_facets(p).count)
    elapsed = time.perf_counter() - t0
    ok = counts == INEQ_COUNTS and elapsed < 300
    report(capsys, 2, "facet counts r=1..5", ok, f"counts={counts} expected={INEQ_COUNTS} seconds={elapsed:.2f}")
    assert ok


CRIT3_WEIGHTS = {1: W(1), 2: W("7/10", "3/10"), 3: W("1/2", "1/3", "1/6")}


def _crit3_sample(rng, k, d, N):
    if k % 3 == 0:
        return simplex_point(rng, d, N, grain=10**6)
    if k % 3 == 1:
        # coarse grid: many samples sit exactly on facets
        return simplex_point(rng, d, N, grain=60)
    # pulled toward (N, 0, ...): populates the region outside the polytope
    t = F(rng.randint(0, 60), 60)
    x = simplex_point(rng, d, N, grain=60)
    return tuple((1 - t) * xi + (t * N if i == 0 else 0) for i, xi in enumerate(x))


def test_criterion_3_analytic_matches_lp(capsys):
    rng = random.Random(3)
    disagreements, total, members = 0, 0, 0
    for r, w in CRIT3_WEIGHTS.items():
        for N in (2, 3, 5):
            for d in (3, 4):
                p = build_vertices(N, d, w)
                system = analytic_halfspaces(N, w, d)
                for k in range(10_000):
                    lam = _crit3_sample(rng, k, d, N)
                    inside = contains(p, lam)
                    members += inside
                    disagreements += check_system(system, lam) != inside
                    total += 1
    ok = disagreements == 0
    report(capsys, 3, "check_system vs LP membership", ok,
           f"samples={total} members={members} disagreements={disagreements}")
    assert ok


CRIT4_SETTINGS = [(2, 3, 2), (3, 3, 3), (3, 4, 3), (2, 5, 3), (3, 4, 4), (4, 5, 4), (4, 4, 2), (1, 4, 1)]


def test_criterion_4_vertex_sequence(capsys):
    results = []
    for k, (N, d, r) in enumerate(CRIT4_SETTINGS):
        rep = verify_trials(N, d, generic_weights(r), trials=100, seed=1000 + k)
        results.append((N, d, r, rep["hits"], rep["max_deviation"]))
    ok = all(hits == 100 and dev <= 1e-10 for *_, hits, dev in results)
    worst = max(dev for *_, dev in results)
    report(capsys, 4, "noninteracting minimizers land on vertices", ok,
           f"settings={len(results)} hits={[h for *_, h, _ in results]} max_deviation={worst:.2e}")
    assert ok


def _random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def test_criterion_5_gok_bound(capsys):
    rng = np.random.default_rng(5)
    w = W("1/2", "3/10", "1/5")
    worst, tight = [], []
    for dim in (20, 56, 100):
        H = _random_hermitian(rng, dim)
        worst.append(gok_bound_violation(H, w, rng, samples=1000))
        # the eigenbasis attains the bound
        e, V = np.linalg.eigh(H)
        wv = np.zeros(dim)
        wv[:3] = [float(x) for x in w.nonzero]
        tight.append(abs(np.real(np.trace(H @ (V * wv) @ V.conj().T)) - wv @ e))
    ok = max(worst) <= 1e-10 and max(tight) <= 1e-10
    report(capsys, 5, "Tr[H U diag(w) U+] >= E_w", ok,
           f"dims=(20, 56, 100) max(E_w - trace)={max(worst):.3e} eigenbasis_gap={max(tight):.1e}")
    assert ok


def test_criterion_6_minkowski(capsys):
    w = W("1/2", "3/10", "1/5")
    small = build_vertices(3, 3, w)
    large = build_vertices(5, 3, w)
    lifted = minkowski_lift(small, 5)
    same_vertices = {v.coords for v in lifted.vertices} == {v.coords for v in large.vertices}
    rng = random.Random(6)
    disagreements = members = 0
    for k in range(1000):
        mu = simplex_point(rng, 3, 5, grain=50 if k % 2 else 10**6)
        inside = contains(large, mu)
        members += inside
        disagreements += inside != in_minkowski_sum(small, 2, mu)
    ok = same_vertices and disagreements == 0
    report(capsys, 6, "Minkowski relation 3 -> 5", ok,
           f"vertex_sets_equal={same_vertices} samples=1000 members={members} disagreements={disagreements}")
    assert ok


MAJORIZATION_CHAIN = [
    W(1, 0, 0),
    W("3/4", "1/4", 0),
    W("1/2", "1/2", 0),
    W("1/2", "1/4", "1/4"),
    W("2/5", "1/3", "4/15"),
    W("1/3", "1/3", "1/3"),
]


def test_criterion_7_hierarchy_and_inclusion(capsys):
    verbatim = []
    for N in (2, 3, 5):
        for w3 in (W("1/2", "1/3", "1/6"), W("3/5", "3/10", "1/10"), generic_weights(3)):
            w2 = W(w3.weights[0], 1 - w3.weights[0])
            r2 = analytic_halfspaces(N, w2, d=3).inequalities
            r3 = analytic_halfspaces(N, w3, d=3).inequalities
            verbatim.append(all(h in r3 for h in r2))
    pairs = []
    for i, big in enumerate(MAJORIZATION_CHAIN):
        for small in MAJORIZATION_CHAIN[i:]:
            pairs.append(domain_inclusion(small, big, 2, 3))
    ok = all(verbatim) and all(pairs)
    report(capsys, 7, "hierarchy and nested domains", ok,
           f"verbatim={sum(verbatim)}/{len(verbatim)} inclusions={sum(pairs)}/{len(pairs)}")
    assert ok


def _random_weights(rng, r):
    cuts = sorted(rng.sample(range(1, 60), r - 1))
    parts = sorted((b - a for a, b in zip([0] + cuts, cuts + [60])), reverse=True)
    return WeightVector(tuple(F(x, 60) for x in parts))


def test_criterion_8_schur_horn(capsys):
    rng = np.random.default_rng(8)
    prng = random.Random(8)
    failures, spectra_pass = [], 0
    for k in range(50):
        N = int(rng.integers(1, 5))
        sites = int(rng.integers(2, 5))
        r = int(rng.integers(1, min(3, sites, N + 1) + 1))
        w = _random_weights(prng, r)
        H = build_bose_hubbard(rng.uniform(0.1, 2.0), rng.uniform(0.0, 8.0), rng.uniform(-1.0, 1.0, sites), N)
        gamma = reduce_1rdm(gok_minimizer(H, w)[0])
        rep = schur_horn_check(gamma, analytic_halfspaces(N, w, d=sites), tol=1e-10)
        spectra_pass += rep["spectrum_passes"]
        if not rep["ok"] or not rep["spectrum_passes"]:
            failures.append((k, N, sites, str(w)))
    ok = not failures
    report(capsys, 8, "Schur-Horn transfer on Bose-Hubbard", ok,
           f"instances=50 spectra_passing={spectra_pass} failures={failures}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
