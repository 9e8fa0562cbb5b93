"""Acceptance criteria 1-12, each at its stated scale and tolerance.

Every test records one PASS/FAIL line (shown in the terminal summary) and then
asserts. Reference values come from brute-force oracles in ``oracles.py`` or are
the published exact values.
"""
import random
import subprocess
import sys
import time

import pytest

from mutvis import constructions as C
from mutvis import theorems as T
from mutvis.graph import all_pairs_distances, cartesian_product, corona, edgeless
from mutvis.solvers import solve
from mutvis.visibility import Geodesics, is_gp_set, is_mv_set
from mutvis.zarankiewicz import (
    ZInstance,
    erdos_window,
    is_2x2_free,
    kst_upper,
    matrix_to_mv_set,
    mv_set_to_matrix,
    projective_lower,
    z_exact,
)

from oracles import brute_alpha, brute_gp, brute_mu, brute_mu_i, brute_z22, random_connected_graph


def value(G, problem):
    res = solve(G, problem)
    assert res.complete, f"{problem} did not finish on {G!r}"
    return res.value


def test_criterion_01_paths_and_k1(criterion):
    start = time.monotonic()
    report = T.check("path_k1_chars", max_n=6, labeled=True)
    elapsed = time.monotonic() - start
    ok = report.status == "pass" and not report.failures and elapsed <= 120
    criterion(1, ok, f"{report.instances_checked} labelled connected graphs n<=6, "
                     f"{len(report.failures)} exceptions, {elapsed:.1f}s (limit 120s)")
    assert report.instances_checked == 1 + 1 + 4 + 38 + 728 + 26704
    assert ok


def test_criterion_02_triangle_free_mu3(criterion):
    start = time.monotonic()
    # class counts pin down that the enumeration is complete
    counts = [sum(1 for _ in T.enumerate_connected_graphs(n, triangle_free_only=True, dedup=True))
              for n in range(1, 8)]
    report = T.check("thm_mu3", max_n=7)
    elapsed = time.monotonic() - start
    complete_enum = counts == [1, 1, 1, 3, 6, 19, 59]
    ok = complete_enum and report.status == "pass" and elapsed <= 600
    criterion(2, ok, f"{report.instances_checked} triangle-free classes n<=7 (counts {counts}), "
                     f"{len(report.failures)} exceptions, {elapsed:.1f}s (limit 600s)")
    assert ok


def test_criterion_03_exact_values(criterion):
    bad = []
    for k in range(2, 11):
        if value(C.path(k), "mu") != 2:
            bad.append(f"P{k}")
    for k in range(6, 13):
        if (value(C.cycle(k), "mu"), value(C.cycle(k), "mu_i")) != (3, 3):
            bad.append(f"C{k}")
    for seed in range(25):
        n = 3 + seed % 10
        Tr = C.random_tree(n, seed)
        if value(Tr, "mu") != len(C.leaves(Tr)):
            bad.append(f"tree:{n},{seed}")
    ok = not bad
    criterion(3, ok, f"P2..P10, C6..C12, 25 seeded trees (n<=12); mismatches: {bad or 'none'}")
    assert ok


def test_criterion_04_diam3(criterion):
    checked = bad = 0
    for G in T.connected_graphs_upto(6):
        if all_pairs_distances(G).diam <= 3:
            checked += 1
            bad += value(G, "mu_i") != value(G, "alpha")
    P5 = C.path(5)
    p5 = (value(P5, "mu_i"), value(P5, "alpha"))
    ok = bad == 0 and checked > 0 and p5 == (2, 3)
    criterion(4, ok, f"mu_i = alpha on {checked} diam<=3 classes (n<=6), {bad} exceptions; "
                     f"(mu_i, alpha)(P5) = {p5}")
    assert ok


def test_criterion_05_corona(criterion):
    Gs = {"P2": C.path(2), "P3": C.path(3), "C4": C.cycle(4)}
    Hs = {"K1": C.complete(1), "K2": C.complete(2), "P3": C.path(3), "E2": edgeless(2), "E3": edgeless(3)}
    bad = []
    for g, G in Gs.items():
        for h, H in Hs.items():
            if value(corona(G, H), "mu") != G.n * H.n:
                bad.append(f"mu({g} o {h})")
        for k in (1, 2, 3):
            if value(corona(G, edgeless(k)), "mu_i") != k * G.n:
                bad.append(f"mu_i({g} o E{k})")
    ok = not bad
    criterion(5, ok, f"15 mu identities and 9 mu_i identities; mismatches: {bad or 'none'}")
    assert ok


def test_criterion_06_product_bounds(criterion):
    factors = {"P3": C.path(3), "P4": C.path(4), "C4": C.cycle(4), "C6": C.cycle(6),
               "K3": C.complete(3), "K13": C.star(3)}
    names = list(factors)
    checked, bad = 0, []
    for i, a in enumerate(names):
        for b in names[i:]:
            G, H = factors[a], factors[b]
            if G.n * H.n > 24:
                continue
            checked += 1
            mg, mh, ig, ih = value(G, "mu"), value(H, "mu"), value(G, "mu_i"), value(H, "mu_i")
            got = value(cartesian_product(G, H)[0], "mu")
            if not max(mg * ih, mh * ig) <= got <= min(mg * H.n, mh * G.n):
                bad.append(f"{a}x{b}")
    p44 = value(cartesian_product(C.path(4), C.path(4))[0], "mu")
    p45 = value(cartesian_product(C.path(4), C.path(5))[0], "mu")
    ok = not bad and checked == 20 and (p44, p45) == (8, 8)
    criterion(6, ok, f"sandwich on {checked} factor pairs, violations {bad or 'none'}; "
                     f"mu(P4xP4)={p44}, mu(P4xP5)={p45}")
    assert ok


def test_criterion_07_kk_times_g(criterion):
    spider = C.spider(2, 1, 1)
    got = (
        value(cartesian_product(C.complete(2), C.cycle(6))[0], "mu"),
        value(cartesian_product(C.complete(3), C.cycle(6))[0], "mu"),
        value(cartesian_product(C.complete(2), spider)[0], "mu"),
    )
    expected = (6, 9, 2 * len(C.leaves(spider)))
    ok = got == expected
    criterion(7, ok, f"(K2xC6, K3xC6, K2xspider(2,1,1)) = {got}, expected {expected}")
    assert ok


def test_criterion_08_zarankiewicz_equivalence(criterion):
    bad = []
    for m in range(2, 5):
        for n in range(2, 5):
            G, lab = cartesian_product(C.complete(m), C.complete(n))
            mu = solve(G, "mu")
            z = z_exact(ZInstance(m, n))
            assert mu.complete and z.complete
            M = mv_set_to_matrix(mu.witness, lab)
            X = matrix_to_mv_set(z.witness, lab)
            if not (
                mu.value == z.value
                and is_2x2_free(M) and int(M.sum()) == mu.value
                and is_mv_set(G, X) and len(X) == z.value
            ):
                bad.append((m, n))
            if m <= 3 and n <= 3 and brute_z22(m, n) != z.value:
                bad.append(("oracle", m, n))
    ok = not bad
    criterion(8, ok, f"mu(KmxKn) = z(m,n;2,2) for 2<=m,n<=4 with witnesses crossed; "
                     f"brute-force z for m,n<=3; failures: {bad or 'none'}")
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="the stated upper bound z(n,n;2,2) <= n(1+sqrt(4n-3))/4 is below the exact value "
           "for every n in 1..6 (z(4,4)=9 > 4.61); strict KST is equality when m=1 or n=1",
)
def test_criterion_09_bound_consistency(criterion):
    proj_bad, kst_bad, erdos_bad = [], [], []
    for m in range(1, 7):
        for n in range(1, 7):
            inst = ZInstance(m, n)
            res = z_exact(inst)
            assert res.complete
            if not projective_lower(inst) <= res.value:
                proj_bad.append((m, n))
            if not res.value < kst_upper(inst):
                kst_bad.append((m, n))
    for n in range(1, 7):
        z = z_exact(ZInstance(n, n)).value
        hi = erdos_window(n)[1]
        if not z <= hi:
            erdos_bad.append(f"n={n}: z={z} > {hi:.2f}")
    interior_kst = [mn for mn in kst_bad if min(mn) >= 2]
    ok = not (proj_bad or kst_bad or erdos_bad)
    criterion(9, ok, f"projective_lower <= z on 36/36 ({len(proj_bad)} violations); "
                     f"z < kst_upper violated at {len(kst_bad)} instances, all with m=1 or n=1 "
                     f"(interior violations: {len(interior_kst)}); quarter-constant upper bound "
                     f"violated at {len(erdos_bad)}/6: {'; '.join(erdos_bad)}")
    assert not proj_bad and not interior_kst
    assert ok


def test_criterion_10_oracle_equivalence(criterion):
    rng = random.Random(20240610)
    graphs = [random_connected_graph(rng, rng.randint(1, 8), rng.choice([0.1, 0.25, 0.4, 0.6]))
              for _ in range(200)]
    exhaustive = list(T.connected_graphs_upto(5, dedup=False))
    oracles = {"mu": brute_mu, "mu_i": brute_mu_i, "alpha": brute_alpha, "gp": brute_gp}
    bad = []
    for G in graphs + exhaustive:
        for p, oracle in oracles.items():
            if value(G, p) != oracle(G):
                bad.append((p, G))
    ok = not bad
    criterion(10, ok, f"{len(graphs)} seeded random graphs (n<=8) + {len(exhaustive)} labelled "
                      f"graphs n<=5, 4 problems each; disagreements: {len(bad)}")
    assert ok


def _grow(geo, rng, n, test):
    members, mask = [], 0
    for v in rng.sample(range(n), n):
        if test(mask | 1 << v):
            members.append(v)
            mask |= 1 << v
    return mask


def test_criterion_11_closure_and_gp_implies_mv(criterion):
    rng = random.Random(11)
    samples = nontrivial = 0
    bad = []
    while samples < 1000:
        G = random_connected_graph(rng, rng.randint(2, 10), rng.choice([0.1, 0.25, 0.45]))
        geo = Geodesics(G)
        for mode in ("mv", "gp", "any"):
            samples += 1
            if mode == "mv":
                mask = _grow(geo, rng, G.n, geo.is_mv)
            elif mode == "gp":
                mask = _grow(geo, rng, G.n, geo.is_gp)
            else:
                mask = sum(1 << v for v in range(G.n) if rng.random() < 0.4)
            X = {v for v in range(G.n) if mask >> v & 1}
            mv, gp = is_mv_set(G, X), is_gp_set(G, None, X)
            if gp and not mv:
                bad.append(("gp not mv", G, X))
            if mv:
                nontrivial += len(X) >= 3
                for v in X:
                    if not is_mv_set(G, X - {v}):
                        bad.append(("closure", G, X, v))
    ok = not bad and nontrivial >= 300
    criterion(11, ok, f"{samples} (graph, set) samples, {nontrivial} MV sets of size >= 3; "
                      f"violations: {len(bad)}")
    assert ok


def test_criterion_12_determinism(criterion):
    def run(workers):
        return subprocess.run(
            [sys.executable, "-m", "mutvis", "check", "--all", "--workers", str(workers)],
            capture_output=True, check=False,
        )

    runs = [run(w) for w in (1, 4, 1, 4)]
    outputs = {r.stdout for r in runs}
    ok = len(outputs) == 1 and all(r.returncode == 0 for r in runs) and runs[0].stdout
    criterion(12, bool(ok), f"check --all with --workers 1,4,1,4: {len(outputs)} distinct report(s), "
                            f"{len(runs[0].stdout)} bytes, exit codes {[r.returncode for r in runs]}")
    assert ok
