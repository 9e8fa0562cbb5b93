"""Exact mu, mu_i, alpha and gp by branch and bound.

All four families (mutual-visibility sets, independent ones, independent sets,
general-position sets) are closed under taking subsets, so one search skeleton
serves them all: extend-or-skip over a candidate list that is filtered after
every extension (a candidate that cannot join the current set can never join a
superset of it), pruning when ``|current| + |candidates| <= incumbent``.

The optimum value is found with vertices ordered by decreasing degree. A second
pass in increasing index order with the value as target returns the
lexicographically smallest optimal set, which keeps witnesses identical no
matter how the first pass was scheduled.
"""
from __future__ import annotations

import multiprocessing as mp
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .graph import DistanceMatrix, Graph, GraphError, all_pairs_distances
from .visibility import Geodesics

DEFAULT_TIMEOUT = 60.0
MAX_VERTICES = 512


class CapExceededError(GraphError):
    """Raised when a graph is larger than the solver's vertex cap."""


@dataclass(frozen=True)
class SolveResult:
    problem: str
    value: int
    witness: frozenset
    nodes_explored: int
    elapsed: float
    complete: bool = True

    def to_dict(self, stats: bool = False) -> dict:
        out = {
            "value": self.value,
            "witness": sorted(self.witness),
            "complete": self.complete,
        }
        if stats:
            out["nodes_explored"] = self.nodes_explored
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return out


@dataclass
class BoundsReport:
    lower: int
    upper: int
    provenance: list = field(default_factory=list)

    def add(self, rule: str, kind: str, value: int) -> None:
        self.provenance.append({"rule": rule, "kind": kind, "value": value})
        if kind == "lower":
            self.lower = max(self.lower, value)
        else:
            self.upper = min(self.upper, value)

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "provenance": list(self.provenance)}


class _Timeout(Exception):
    pass


class _Problem:
    """A downward-closed family given by an incremental membership test."""

    name = ""

    def __init__(self, G: Graph, D: DistanceMatrix | None):
        self.G = G

    def ok(self, members: list[int], mask: int, v: int) -> bool:
        """Can ``v`` join the feasible set ``mask``?"""
        raise NotImplementedError


class _Alpha(_Problem):
    name = "alpha"

    def ok(self, members, mask, v):
        return not self.G.neighbor_bits[v] & mask


class _Mu(_Problem):
    name = "mu"

    def __init__(self, G, D):
        super().__init__(G, D)
        self.geo = Geodesics(G, D)

    def ok(self, members, mask, v):
        return self.geo.can_extend(members, mask, v)


class _MuI(_Mu):
    name = "mu_i"

    def ok(self, members, mask, v):
        return not self.G.neighbor_bits[v] & mask and self.geo.can_extend(members, mask, v)


class _GP(_Problem):
    name = "gp"

    def __init__(self, G, D):
        super().__init__(G, D)
        self.interior = Geodesics(G, D).interior

    def ok(self, members, mask, v):
        inner = self.interior
        row = inner[v]
        bit = 1 << v
        for i, a in enumerate(members):
            if row[a] & mask:
                return False
            ra = inner[a]
            for b in members[i + 1 :]:
                if ra[b] & bit:
                    return False
        return True


PROBLEMS: dict[str, type[_Problem]] = {"mu": _Mu, "mu_i": _MuI, "alpha": _Alpha, "gp": _GP}


class _Search:
    def __init__(self, problem: _Problem, deadline: float, shared=None):
        self.problem = problem
        self.deadline = deadline
        self.shared = shared
        self.best: tuple[int, ...] = ()
        self.nodes = 0

    def _bound(self) -> int:
        best = len(self.best)
        if self.shared is not None:
            best = max(best, self.shared.value)
        return best

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise _Timeout

    def maximise(self, members: list[int], mask: int, cands: list[int]) -> None:
        self._tick()
        size = len(members)
        if size > len(self.best):
            self.best = tuple(members)
            if self.shared is not None and size > self.shared.value:
                self.shared.value = size
        ok = self.problem.ok
        for i, v in enumerate(cands):
            if size + len(cands) - i <= self._bound():
                return
            new = mask | 1 << v
            members.append(v)
            nxt = [w for w in cands[i + 1 :] if ok(members, new, w)]
            self.maximise(members, new, nxt)
            members.pop()

    def reach(self, members: list[int], mask: int, cands: list[int], target: int) -> bool:
        """Depth-first, include-first search for a feasible set of size ``target``."""
        self._tick()
        size = len(members)
        if size == target:
            self.best = tuple(members)
            return True
        ok = self.problem.ok
        for i, v in enumerate(cands):
            if size + len(cands) - i < target:
                return False
            new = mask | 1 << v
            members.append(v)
            nxt = [w for w in cands[i + 1 :] if ok(members, new, w)]
            if self.reach(members, new, nxt, target):
                return True
            members.pop()
        return False


# Per-process state for parallel workers; set by _init_worker.
_WORKER: dict = {}


def _init_worker(problem: _Problem, shared, deadline: float) -> None:
    _WORKER.update(problem=problem, shared=shared, deadline=deadline)


def _run_subtree(args: tuple[int, list[int]]) -> tuple[tuple[int, ...], int, bool]:
    first, rest = args
    search = _Search(_WORKER["problem"], _WORKER["deadline"], _WORKER["shared"])
    problem = search.problem
    cands = [w for w in rest if problem.ok([first], 1 << first, w)]
    try:
        search.maximise([first], 1 << first, cands)
    except _Timeout:
        return search.best, search.nodes, False
    return search.best, search.nodes, True


def branch_order(G: Graph) -> list[int]:
    """Vertices by decreasing degree, ties by index."""
    return sorted(range(G.n), key=lambda v: (-G.degree(v), v))


def _check_input(G: Graph, max_vertices: int) -> None:
    if G.n > max_vertices:
        raise CapExceededError(f"graph has {G.n} vertices, solver cap is {max_vertices}")
    G.require_connected()


def solve(
    G: Graph,
    problem: str,
    timeout: float | None = DEFAULT_TIMEOUT,
    workers: int = 1,
    max_vertices: int = MAX_VERTICES,
    D: DistanceMatrix | None = None,
) -> SolveResult:
    """Exact maximum of ``problem`` (one of ``mu``, ``mu_i``, ``alpha``, ``gp``) on ``G``.

    On timeout the result carries ``complete=False`` and the best set found so
    far; its value is then only a lower bound.
    """
    _check_input(G, max_vertices)
    if D is None:
        D = all_pairs_distances(G)
    prob = PROBLEMS[problem](G, D)
    start = time.monotonic()
    deadline = start + timeout if timeout else float("inf")
    order = branch_order(G)
    nodes = 0
    complete = True

    if workers > 1 and G.n > 1:
        ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
        shared = ctx.RawValue("i", 0)
        tasks = [(v, order[i + 1 :]) for i, v in enumerate(order)]
        best: tuple[int, ...] = ()
        with ProcessPoolExecutor(
            max_workers=workers,
            mp_context=ctx,
            initializer=_init_worker,
            initargs=(prob, shared, deadline),
        ) as pool:
            for found, n_nodes, done in pool.map(_run_subtree, tasks):
                nodes += n_nodes
                complete &= done
                if len(found) > len(best):
                    best = found
    else:
        search = _Search(prob, deadline)
        try:
            search.maximise([], 0, order)
        except _Timeout:
            complete = False
        best, nodes = search.best, search.nodes

    value = len(best)
    witness = frozenset(best)
    if complete:
        canon = _Search(prob, deadline)
        try:
            canon.reach([], 0, list(range(G.n)), value)
            witness = frozenset(canon.best)
        except _Timeout:
            complete = False
        nodes += canon.nodes
    return SolveResult(problem, value, witness, nodes, time.monotonic() - start, complete)


def solve_mu(G: Graph, **kw) -> SolveResult:
    return solve(G, "mu", **kw)


def solve_mu_i(G: Graph, **kw) -> SolveResult:
    return solve(G, "mu_i", **kw)


def solve_alpha(G: Graph, **kw) -> SolveResult:
    return solve(G, "alpha", **kw)


def solve_gp(G: Graph, **kw) -> SolveResult:
    return solve(G, "gp", **kw)


def feasibility_test(G: Graph, problem: str) -> Callable[[frozenset], bool]:
    """Membership test of the family behind ``problem``, for whole sets."""
    prob = PROBLEMS[problem](G, all_pairs_distances(G))

    def test(X) -> bool:
        members: list[int] = []
        mask = 0
        for v in sorted(X):
            if not prob.ok(members, mask, v):
                return False
            members.append(v)
            mask |= 1 << v
        return True

    return test


def contains_subgraph_h(G: Graph) -> bool:
    """Whether ``G`` has a (not necessarily induced) subgraph isomorphic to graph H.

    H is an edge ``uv`` plus two private neighbours for each end. For an edge
    ``uv`` with ``A = N(u) - v`` and ``B = N(v) - u`` such neighbours exist iff
    ``|A| >= 2``, ``|B| >= 2`` and ``|A | B| >= 4``.
    """
    nb = G.neighbor_bits
    for u, v in G.edges:
        a = nb[u] & ~(1 << v)
        b = nb[v] & ~(1 << u)
        if a.bit_count() >= 2 and b.bit_count() >= 2 and (a | b).bit_count() >= 4:
            return True
    return False


def shortest_cycle(G: Graph) -> list[int] | None:
    """Vertices of a shortest cycle of ``G`` (an isometric subgraph), or ``None``."""
    best: list[int] | None = None
    for s in range(G.n):
        parent = {s: -1}
        depth = {s: 0}
        queue = [s]
        for u in queue:
            if best is not None and 2 * depth[u] + 1 >= len(best):
                break
            for w in G.adjacency[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = depth[u] + depth[w] + 1
                    if best is None or length < len(best):
                        left, right = [u], [w]
                        while left[-1] != s:
                            left.append(parent[left[-1]])
                        while right[-1] != s:
                            right.append(parent[right[-1]])
                        cycle = left + right[-2::-1]
                        if len(set(cycle)) == len(cycle) == length:
                            best = cycle
    return best


def bounds_mu(
    G: Graph,
    factors: tuple[Graph, Graph] | None = None,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> BoundsReport:
    """Cheap certified bounds on mu(G).

    With ``factors=(A, B)`` for ``G = A □ B`` the product sandwich
    ``max(mu(A) mu_i(B), mu(B) mu_i(A)) <= mu(G) <= min(mu(A) n(B), mu(B) n(A))``
    is added, using exact factor values.
    """
    from .graph import is_triangle_free, max_degree

    report = BoundsReport(lower=1, upper=G.n)
    report.add("order", "upper", G.n)
    if G.n >= 2:
        report.add("two_vertices", "lower", 2)
    report.add("max_degree", "lower", max_degree(G))
    if shortest_cycle(G) is not None:
        report.add("isometric_cycle", "lower", 3)
    if is_triangle_free(G) and contains_subgraph_h(G):
        report.add("triangle_free_contains_h", "lower", 4)
    if factors is not None:
        a, b = factors
        mu_a, mu_b = (solve_mu(f, timeout=timeout) for f in (a, b))
        mi_a, mi_b = (solve_mu_i(f, timeout=timeout) for f in (a, b))
        if all(r.complete for r in (mu_a, mu_b)):
            report.add("product_layers", "upper", min(mu_a.value * b.n, mu_b.value * a.n))
        report.add(
            "product_independent",
            "lower",
            max(mu_a.value * mi_b.value, mu_b.value * mi_a.value),
        )
    return report


def default_timeout() -> float:
    env = os.environ.get("MUTVIS_TIMEOUT_SECS")
    return float(env) if env else DEFAULT_TIMEOUT


__all__ = [
    "BoundsReport",
    "CapExceededError",
    "SolveResult",
    "bounds_mu",
    "contains_subgraph_h",
    "shortest_cycle",
    "solve",
    "solve_alpha",
    "solve_gp",
    "solve_mu",
    "solve_mu_i",
]
