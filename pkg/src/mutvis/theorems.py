"""Machine checks of the structural claims about mu, mu_i, alpha and products.

Every claim is split into independent instances. ``evaluate`` decides one
instance and returns ``(verdict, expected, got)`` with verdict one of
``ok``, ``fail``, ``na`` (hypothesis not met) or ``timeout``. Instances may be
evaluated in worker processes; reports are merged in instance order.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator

from . import constructions as C
from .graph import (
    Graph,
    GraphError,
    all_pairs_distances,
    build_graph,
    canonical_form,
    cartesian_product,
    corona,
    edgeless,
    is_isometric_subgraph,
    is_triangle_free,
    max_degree,
)
from .io import to_graph6
from .solvers import contains_subgraph_h, solve
from .visibility import is_mv_set
from .zarankiewicz import ZInstance, z_exact

MAX_ENUM_N = 8


# -- enumeration -------------------------------------------------------------


def _labeled(n: int, triangle_free_only: bool) -> Iterator[Graph]:
    slots = list(combinations(range(n), 2))
    for code in range(1 << len(slots)):
        edges = [slots[k] for k in range(len(slots)) if code >> k & 1]
        if len(edges) < n - 1:
            continue
        G = build_graph(n, edges)
        if G.is_connected() and (not triangle_free_only or is_triangle_free(G)):
            yield G


@lru_cache(maxsize=None)
def _classes(n: int, triangle_free_only: bool) -> tuple[Graph, ...]:
    """One representative per isomorphism class, sorted by canonical code.

    Every connected graph has a vertex whose removal leaves it connected, so
    adding a vertex in all possible ways to the classes on ``n - 1`` vertices
    reaches every class on ``n``.
    """
    if n == 1:
        return (build_graph(1, []),)
    found: dict[tuple[int, int], Graph] = {}
    for G in _classes(n - 1, triangle_free_only):
        base = G.edges
        for nbrs in range(1, 1 << G.n):
            if triangle_free_only and any(G.neighbor_bits[v] & nbrs for v in range(G.n) if nbrs >> v & 1):
                continue
            H = build_graph(n, base + [(v, n - 1) for v in range(G.n) if nbrs >> v & 1])
            code = canonical_form(H)
            if code not in found:
                found[code] = H
    return tuple(found[k] for k in sorted(found))


def enumerate_connected_graphs(
    n: int, triangle_free_only: bool = False, dedup: bool = False
) -> Iterator[Graph]:
    """All connected graphs on ``n`` vertices.

    By default every labelled graph is produced (``2^(n(n-1)/2)`` candidates,
    so keep ``n <= 7``). With ``dedup=True`` one representative per
    isomorphism class is produced instead, using exact canonical forms.
    """
    if n < 1:
        raise GraphError("n must be >= 1")
    if n > MAX_ENUM_N or (not dedup and n > 7):
        raise GraphError(f"enumeration of n={n} is beyond the supported size")
    if dedup:
        yield from _classes(n, triangle_free_only)
    else:
        yield from _labeled(n, triangle_free_only)


def connected_graphs_upto(max_n: int, triangle_free_only: bool = False, dedup: bool = True):
    for n in range(1, max_n + 1):
        yield from enumerate_connected_graphs(n, triangle_free_only, dedup)


# -- reports -----------------------------------------------------------------


@dataclass
class CheckReport:
    claim_id: str
    instances_checked: int = 0
    failures: list = field(default_factory=list)
    status: str = "skipped"
    reason: str = ""
    elapsed_ms: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "claim_id": self.claim_id,
            "instances_checked": self.instances_checked,
            "failures": self.failures,
            "status": self.status,
        }
        if self.reason:
            out["reason"] = self.reason
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


class _Incomplete(Exception):
    pass


def _value(G: Graph, problem: str, timeout: float) -> int:
    res = solve(G, problem, timeout=timeout)
    if not res.complete:
        raise _Incomplete
    return res.value


def _name(G: Graph) -> str:
    return "g6:" + to_graph6(G)


# -- claims ------------------------------------------------------------------
#
# Each claim is (instances(scale) -> list of (description, payload),
#                evaluate(payload, timeout) -> (ok, expected, got) or None).


def _inst_graphs(scale, default_n, triangle_free_only=False):
    if scale.get("graphs") is not None:
        return [(_name(G), G) for G in scale["graphs"]]
    n = scale.get("max_n") or default_n
    graphs = connected_graphs_upto(n, triangle_free_only, dedup=not scale.get("labeled"))
    return [(_name(G), G) for G in graphs]


def _eq1(G, timeout):
    mu, mi, a = (_value(G, p, timeout) for p in ("mu", "mu_i", "alpha"))
    return mi <= min(mu, a), "mu_i <= min(mu, alpha)", {"mu": mu, "mu_i": mi, "alpha": a}


def _diam3_instances(scale):
    out = _inst_graphs(scale, 6)
    if scale.get("graphs") is None:
        out.append(("P5 non-example", "P5"))
    return out


def _diam3(payload, timeout):
    if payload == "P5":
        P5 = C.path(5)
        got = {"mu_i": _value(P5, "mu_i", timeout), "alpha": _value(P5, "alpha", timeout)}
        return got == {"mu_i": 2, "alpha": 3}, {"mu_i": 2, "alpha": 3}, got
    G = payload
    if all_pairs_distances(G).diam > 3:
        return None
    mi, a = _value(G, "mu_i", timeout), _value(G, "alpha", timeout)
    return mi == a, "mu_i == alpha", {"mu_i": mi, "alpha": a}


def _trees_instances(scale):
    count = scale.get("count", 25)
    out = []
    for seed in range(count):
        n = 3 + seed % 10
        out.append((f"tree:{n},{seed}", C.random_tree(n, seed)))
    return out


def _trees(T, timeout):
    leaves = len(C.leaves(T))
    mu, mi = _value(T, "mu", timeout), _value(T, "mu_i", timeout)
    return mu == leaves == mi, {"mu": leaves, "mu_i": leaves}, {"mu": mu, "mu_i": mi}


CORONA_G = {"P2": lambda: C.path(2), "P3": lambda: C.path(3), "C4": lambda: C.cycle(4)}
CORONA_H = {
    "K1": lambda: C.complete(1),
    "K2": lambda: C.complete(2),
    "P3": lambda: C.path(3),
    "E2": lambda: edgeless(2),
    "E3": lambda: edgeless(3),
}


def _corona_instances(scale):
    out = []
    for g in CORONA_G:
        for h in CORONA_H:
            out.append((f"mu({g} o {h})", ("mu", g, h)))
        for k in (1, 2, 3):
            out.append((f"mu_i({g} o E{k})", ("mu_i", g, k)))
    return out


def _corona(payload, timeout):
    kind, g, h = payload
    G = CORONA_G[g]()
    H = CORONA_H[h]() if kind == "mu" else edgeless(h)
    expected = G.n * H.n
    got = _value(corona(G, H), kind, timeout)
    return got == expected, expected, got


CP_FACTORS = {
    "P3": lambda: C.path(3),
    "P4": lambda: C.path(4),
    "C4": lambda: C.cycle(4),
    "C6": lambda: C.cycle(6),
    "K3": lambda: C.complete(3),
    "K13": lambda: C.star(3),
}


def _pairs(names, factory, max_order):
    out = []
    keys = list(names)
    for i, a in enumerate(keys):
        for b in keys[i:]:
            if factory[a]().n * factory[b]().n <= max_order:
                out.append((a, b))
    return out


def _cp_instances(scale):
    max_order = scale.get("max_order", 24)
    return [(f"{a} x {b}", (a, b)) for a, b in _pairs(CP_FACTORS, CP_FACTORS, max_order)]


def _cp(payload, timeout):
    a, b = payload
    G, H = CP_FACTORS[a](), CP_FACTORS[b]()
    mg, mh = _value(G, "mu", timeout), _value(H, "mu", timeout)
    ig, ih = _value(G, "mu_i", timeout), _value(H, "mu_i", timeout)
    lower = max(mg * ih, mh * ig)
    upper = min(mg * H.n, mh * G.n)
    got = _value(cartesian_product(G, H)[0], "mu", timeout)
    return lower <= got <= upper, {"lower": lower, "upper": upper}, got


TREES = {
    "P3": lambda: C.path(3),
    "P4": lambda: C.path(4),
    "K13": lambda: C.star(3),
    "S211": lambda: C.spider(2, 1, 1),
    "P5": lambda: C.path(5),
}


def _tree_cp_instances(scale):
    max_order = scale.get("max_order", 20)
    return [(f"{a} x {b}", (a, b)) for a, b in _pairs(TREES, TREES, max_order)]


def _tree_cp(payload, timeout):
    a, b = payload
    T1, T2 = TREES[a](), TREES[b]()
    lower = _value(T1, "mu", timeout) * _value(T2, "mu", timeout)
    got = _value(cartesian_product(T1, T2)[0], "mu", timeout)
    return got >= lower, {"at_least": lower}, got


KKG = {
    "C6": lambda: C.cycle(6),
    "C7": lambda: C.cycle(7),
    "P3": lambda: C.path(3),
    "K13": lambda: C.star(3),
    "S211": lambda: C.spider(2, 1, 1),
    "S222": lambda: C.spider(2, 2, 2),
}


def _kkg_instances(scale):
    return [(f"K{k} x {g}", (k, g)) for g in KKG for k in (2, 3)]


def _kkg(payload, timeout):
    k, g = payload
    G = KKG[g]()
    mu = _value(G, "mu", timeout)
    if mu != _value(G, "mu_i", timeout):
        return None
    got = _value(cartesian_product(C.complete(k), G)[0], "mu", timeout)
    return got == k * mu, k * mu, got


def induced_four_cycles(G: Graph) -> list[frozenset]:
    """Vertex sets of all induced 4-cycles, by scanning every 4-subset."""
    out = []
    for quad in combinations(range(G.n), 4):
        sub, _ = G.induced_subgraph(quad)
        if sub.m == 4 and all(d == 2 for d in sub.degrees()):
            out.append(frozenset(quad))
    return out


def _hamming_instances(scale):
    top = scale.get("max_side", 3)
    return [(f"K{r} x K{s}", (r, s)) for r in range(2, top + 1) for s in range(r, top + 1)]


def _hamming(payload, timeout):
    r, s = payload
    G = cartesian_product(C.complete(r), C.complete(s))[0]
    D = all_pairs_distances(G)
    squares = induced_four_cycles(G)
    for code in range(1 << G.n):
        X = frozenset(v for v in range(G.n) if code >> v & 1)
        mv = is_mv_set(G, X, D)
        sparse = all(len(X & q) <= 3 for q in squares)
        if mv != sparse:
            return False, "mv == (every induced C4 meets X in <= 3)", {
                "X": sorted(X), "mv": mv, "square_condition": sparse
            }
    return True, None, None


def _zar_instances(scale):
    top = scale.get("max_side", 4)
    return [(f"K{m} x K{n}", (m, n)) for m in range(2, top + 1) for n in range(2, top + 1)]


def _zar(payload, timeout):
    m, n = payload
    z = z_exact(ZInstance(m, n), timeout=timeout)
    if not z.complete:
        raise _Incomplete
    got = _value(cartesian_product(C.complete(m), C.complete(n))[0], "mu", timeout)
    return got == z.value, z.value, got


def _isometric_instances(scale):
    rng = random.Random(scale.get("seed", 0))
    per_graph = scale.get("samples", 4)
    out = []
    for name, G in _inst_graphs(scale, 6):
        D = all_pairs_distances(G)
        subsets = []
        for code in range(1, 1 << G.n):
            W = [v for v in range(G.n) if code >> v & 1]
            sub, _ = G.induced_subgraph(W)
            if len(W) < G.n and sub.is_connected() and is_isometric_subgraph(G, W, D):
                subsets.append(W)
        for W in rng.sample(subsets, min(per_graph, len(subsets))):
            out.append((f"{name} [{','.join(map(str, W))}]", (G, tuple(W))))
    return out


def _isometric(payload, timeout):
    G, W = payload
    sub, _ = G.induced_subgraph(W)
    big, small = _value(G, "mu", timeout), _value(sub, "mu", timeout)
    return big >= small, {"at_least": small}, big


def _delta(G, timeout):
    mu = _value(G, "mu", timeout)
    return mu >= max_degree(G), {"at_least": max_degree(G)}, mu


def _h_instances(scale):
    return [
        (name, G)
        for name, G in _inst_graphs(scale, 8, triangle_free_only=True)
        if is_triangle_free(G) and contains_subgraph_h(G)
    ]


def _h(G, timeout):
    if not (is_triangle_free(G) and contains_subgraph_h(G)):
        return None
    mu = _value(G, "mu", timeout)
    return mu >= 4, {"at_least": 4}, mu


def _mu3(G, timeout):
    if not is_triangle_free(G):
        return None
    mu = _value(G, "mu", timeout)
    shape = C.is_tree_with_exactly_three_leaves(G) or C.recognize_frog(G) is not None
    return (mu == 3) == shape, {"mu == 3": shape}, {"mu": mu}


def _chars(G, timeout):
    mu = _value(G, "mu", timeout)
    is_k1 = G.n == 1
    is_path = G.n >= 2 and C.is_path_graph(G)
    ok = (mu == 1) == is_k1 and (mu == 2) == is_path
    return ok, {"mu == 1": is_k1, "mu == 2": is_path}, {"mu": mu}


def _prs_instances(scale):
    pairs = scale.get("pairs", [(4, 4), (4, 5)])
    return [(f"P{r} x P{s}", (r, s)) for r, s in pairs]


def _prs(payload, timeout):
    r, s = payload
    got = _value(C.grid(r, s), "mu", timeout)
    return got == 2 * min(r, s), 2 * min(r, s), got


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    instances: Callable
    evaluate: Callable


CLAIMS: dict[str, Claim] = {
    c.claim_id: c
    for c in [
        Claim("eq1_sandwich", "mu_i(G) <= min(mu(G), alpha(G))",
              lambda s: _inst_graphs(s, 6), _eq1),
        Claim("lemma_diam3", "diam(G) <= 3 implies mu_i(G) = alpha(G); mu_i(P5)=2, alpha(P5)=3",
              _diam3_instances, _diam3),
        Claim("eq2_trees", "mu(T) = #leaves = mu_i(T) for trees with n >= 3",
              _trees_instances, _trees),
        Claim("prop_corona", "mu(G o H) = n(G) n(H); mu_i(G o E_k) = k n(G)",
              _corona_instances, _corona),
        Claim("thm_cp_bounds", "max(mu(G)mu_i(H), mu(H)mu_i(G)) <= mu(G x H) <= min(mu(G)n(H), mu(H)n(G))",
              _cp_instances, _cp),
        Claim("cor_trees_lower", "mu(T1 x T2) >= mu(T1) mu(T2)",
              _tree_cp_instances, _tree_cp),
        Claim("thm_kkg", "mu(G) = mu_i(G) implies mu(K_k x G) = k mu(G)",
              _kkg_instances, _kkg),
        Claim("lemma_hamming", "X is MV in K_r x K_s iff every induced C4 meets X in <= 3 vertices",
              _hamming_instances, _hamming),
        Claim("cor_zarankiewicz", "mu(K_m x K_n) = z(m, n; 2, 2)",
              _zar_instances, _zar),
        Claim("lemma_isometric", "G' isometric in G implies mu(G) >= mu(G')",
              _isometric_instances, _isometric),
        Claim("lemma_delta", "mu(G) >= max degree",
              lambda s: _inst_graphs(s, 6), _delta),
        Claim("lemma_h", "triangle-free G containing H has mu(G) >= 4",
              _h_instances, _h),
        Claim("thm_mu3", "triangle-free G: mu(G) = 3 iff G is a tree with 3 leaves or a frog",
              lambda s: _inst_graphs(s, 7, triangle_free_only=True), _mu3),
        Claim("path_k1_chars", "mu(G) = 1 iff G = K1; mu(G) = 2 iff G is a path",
              lambda s: _inst_graphs(s, 7), _chars),
        Claim("remark_prs", "mu(P_r x P_s) = 2 min(r, s) for r, s > 3",
              _prs_instances, _prs),
    ]
}


def _evaluate(task):
    claim_id, payload, timeout = task
    try:
        res = CLAIMS[claim_id].evaluate(payload, timeout)
    except _Incomplete:
        return "timeout", None, None
    if res is None:
        return "na", None, None
    ok, expected, got = res
    return ("ok" if ok else "fail"), expected, got


def _finish(report: CheckReport, descs, verdicts, start: float) -> CheckReport:
    timeouts = 0
    for desc, (verdict, expected, got) in zip(descs, verdicts):
        if verdict == "na":
            continue
        if verdict == "timeout":
            timeouts += 1
            continue
        report.instances_checked += 1
        if verdict == "fail":
            report.failures.append({"instance": desc, "expected": expected, "got": got})
    if report.failures:
        report.status = "fail"
    elif timeouts:
        report.status = "skipped"
        report.reason = f"solver timeout on {timeouts} instance(s)"
    elif report.instances_checked == 0:
        report.status = "skipped"
        report.reason = "not applicable: no instance satisfies the hypothesis"
    else:
        report.status = "pass"
    report.elapsed_ms = (time.monotonic() - start) * 1000
    return report


def run_checks(
    claim_ids: list[str], workers: int = 1, timeout: float = 60.0, **scale
) -> list[CheckReport]:
    """Check several claims, optionally spreading all their instances over processes."""
    unknown = [c for c in claim_ids if c not in CLAIMS]
    if unknown:
        raise KeyError(f"unknown claim id(s) {unknown}; valid: {', '.join(CLAIMS)}")
    start = time.monotonic()
    plans = []
    tasks = []
    for cid in claim_ids:
        insts = CLAIMS[cid].instances(dict(scale))
        plans.append((cid, [d for d, _ in insts], len(tasks)))
        tasks.extend((cid, p, timeout) for _, p in insts)
    reports = []
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(_evaluate, tasks, chunksize=8))
        for cid, descs, offset in plans:
            part = verdicts[offset : offset + len(descs)]
            reports.append(_finish(CheckReport(cid), descs, part, start))
        return reports
    for cid, descs, offset in plans:
        t0 = time.monotonic()
        part = [_evaluate(t) for t in tasks[offset : offset + len(descs)]]
        reports.append(_finish(CheckReport(cid), descs, part, t0))
    return reports


def check(claim_id: str, workers: int = 1, timeout: float = 60.0, **scale) -> CheckReport:
    """Check one claim. Scale keys: ``max_n``, ``labeled``, ``graphs``,
    ``count``, ``max_order``, ``max_side``, ``samples``, ``seed``, ``pairs``."""
    return run_checks([claim_id], workers=workers, timeout=timeout, **scale)[0]
