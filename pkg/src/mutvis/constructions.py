"""Graph families and the recognizers used by the triangle-free characterization."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import (
    Graph,
    GraphError,
    bfs_distances,
    build_graph,
    cartesian_product,
    corona,
    edgeless,
)


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(k: int) -> Graph:
    """``K_{1,k}`` with centre 0."""
    return build_graph(k + 1, [(0, i) for i in range(1, k + 1)])


def grid(r: int, s: int) -> Graph:
    return cartesian_product(path(r), path(s))[0]


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def spider(*legs: int) -> Graph:
    """Centre 0 with one pendant path of ``legs[i]`` edges per leg."""
    edges = []
    nxt = 1
    for length in legs:
        if length < 1:
            raise GraphError("spider legs need at least one edge")
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree on ``n`` vertices from a seeded Prüfer sequence."""
    if n < 1:
        raise GraphError("tree needs at least one vertex")
    if n <= 2:
        return path(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(n) if degree[x] == 1)
    edges.append((u, w))
    return build_graph(n, edges)


def make_graph_h() -> Graph:
    """Two P_3's whose centres 0 and 1 are joined; pendant vertices 2..5."""
    return build_graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


@dataclass(frozen=True)
class FrogSpec:
    """Cycle of length ``c`` with paths of orders ``r`` and ``s`` hung at antipodal junctions.

    ``junctions`` are vertex indices in the graph these parameters were read from (or
    built into); ``None`` until a graph exists.
    """

    c: int
    r: int = 1
    s: int = 1
    junctions: tuple[int, int] | None = None

    def __post_init__(self):
        if self.c < 3:
            raise GraphError(f"frog cycle needs c >= 3, got {self.c}")
        if self.r < 1 or self.s < 1:
            raise GraphError("frog path orders must be >= 1")

    @property
    def order(self) -> int:
        return self.c + self.r + self.s - 2


def make_frog(c: int, r: int = 1, s: int = 1) -> Graph:
    """Frog graph: cycle ``0..c-1``; ``P_r`` hangs at 0 and ``P_s`` at ``c // 2``."""
    spec = FrogSpec(c, r, s)
    edges = [(i, (i + 1) % c) for i in range(c)]
    nxt = c
    for junction, order in ((0, spec.r), (c // 2, spec.s)):
        prev = junction
        for _ in range(order - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


def _core_cycle(G: Graph) -> list[int] | None:
    """For a unicyclic graph, the cycle vertices in cyclic order."""
    deg = G.degrees()
    alive = [True] * G.n
    stack = [v for v in range(G.n) if deg[v] == 1]
    while stack:
        v = stack.pop()
        alive[v] = False
        for w in G.adjacency[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    core = [v for v in range(G.n) if alive[v]]
    if not core or any(deg[v] != 2 for v in core):
        return None
    order = [core[0]]
    prev = -1
    while True:
        cur = order[-1]
        nxt = next(w for w in G.adjacency[cur] if alive[w] and w != prev)
        if nxt == order[0]:
            break
        order.append(nxt)
        prev = cur
    return order if len(order) == len(core) else None


def recognize_frog(G: Graph) -> FrogSpec | None:
    """Return the frog parameters of ``G`` if it is a frog graph, else ``None``.

    ``r`` is the order of the path at the first junction in the returned pair.
    With a single degree-3 vertex the second junction is the antipodal vertex
    reached clockwise along the detected cycle order.
    """
    if not G.is_connected() or G.m != G.n:
        return None
    degs = G.degrees()
    if max(degs) > 3:
        return None
    cyc = _core_cycle(G)
    if cyc is None:
        return None
    c = len(cyc)
    on_cycle = set(cyc)
    branch = [v for v in cyc if degs[v] == 3]
    if len(branch) > 2 or any(degs[v] == 3 for v in range(G.n) if v not in on_cycle):
        return None
    pos = {v: i for i, v in enumerate(cyc)}
    if len(branch) == 2:
        gap = abs(pos[branch[0]] - pos[branch[1]])
        if min(gap, c - gap) != c // 2:
            return None
        junctions = (branch[0], branch[1])
    elif len(branch) == 1:
        junctions = (branch[0], cyc[(pos[branch[0]] + c // 2) % c])
    else:
        junctions = (cyc[0], cyc[c // 2])
    # Off-cycle vertices have degree <= 2, so each hanging tree is a path.
    orders = []
    for j in junctions:
        count = 1
        prev, cur = j, next((w for w in G.adjacency[j] if w not in on_cycle), None)
        while cur is not None:
            count += 1
            prev, cur = cur, next((w for w in G.adjacency[cur] if w != prev), None)
        orders.append(count)
    return FrogSpec(c, orders[0], orders[1], junctions)


def is_tree(G: Graph) -> bool:
    return G.is_connected() and G.m == G.n - 1


def leaves(G: Graph) -> list[int]:
    return [v for v in range(G.n) if G.degree(v) == 1]


def is_tree_with_exactly_three_leaves(G: Graph) -> bool:
    return is_tree(G) and len(leaves(G)) == 3


def is_path_graph(G: Graph) -> bool:
    return is_tree(G) and max(G.degrees(), default=0) <= 2


def is_geodetic(G: Graph) -> bool:
    """Every pair of vertices joined by exactly one shortest path."""
    G.require_connected()
    for s in range(G.n):
        dist = bfs_distances(G, s)
        count = [0] * G.n
        count[s] = 1
        for v in sorted(range(G.n), key=dist.__getitem__):
            if v != s:
                count[v] = sum(count[w] for w in G.adjacency[v] if dist[w] == dist[v] - 1)
                if count[v] > 1:
                    return False
    return True


def girth(G: Graph) -> float:
    from .solvers import shortest_cycle

    cyc = shortest_cycle(G)
    return float("inf") if cyc is None else len(cyc)


FAMILIES = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "star": (star, 1),
    "empty": (edgeless, 1),
    "grid": (grid, 2),
    "petersen": (petersen, 0),
    "graph_h": (make_graph_h, 0),
    "frog": (make_frog, (1, 3)),
    "tree": (random_tree, 2),
    "spider": (spider, None),
}


def standard_graph(name: str, *params: int) -> Graph:
    """Build a named family member, e.g. ``standard_graph("grid", 2, 3)``."""
    try:
        fn, arity = FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}") from None
    if isinstance(arity, int) and len(params) != arity:
        raise GraphError(f"{name} takes {arity} parameter(s), got {len(params)}")
    if isinstance(arity, tuple) and not arity[0] <= len(params) <= arity[1]:
        raise GraphError(f"{name} takes {arity[0]}..{arity[1]} parameters, got {len(params)}")
    if arity is None and not params:
        raise GraphError(f"{name} needs at least one parameter")
    if any(p < 0 for p in params):
        raise GraphError(f"{name}: parameters must be non-negative")
    return fn(*params)


def _split_pair(body: str, seed: int) -> tuple[Graph, Graph]:
    parts = body.split(",")
    for i in range(1, len(parts)):
        try:
            return (
                parse_family(",".join(parts[:i]), seed),
                parse_family(",".join(parts[i:]), seed),
            )
        except GraphError:
            continue
    raise GraphError(f"cannot split {body!r} into two graph specs")


def parse_family(spec: str, seed: int = 0) -> Graph:
    """Parse a generator spec such as ``cycle:8``, ``frog:6,3,2`` or
    ``cartesian:complete:3,complete:3``.

    Binary operators take the first comma split at which both sides are valid
    specs. ``tree:n`` without an explicit seed uses ``seed``.
    """
    name, _, body = spec.strip().partition(":")
    if name in ("cartesian", "corona"):
        a, b = _split_pair(body, seed)
        return cartesian_product(a, b)[0] if name == "cartesian" else corona(a, b)
    try:
        params = [int(p) for p in body.split(",")] if body else []
    except ValueError:
        raise GraphError(f"bad parameters in {spec!r}") from None
    if name == "tree" and len(params) == 1:
        params.append(seed)
    return standard_graph(name, *params)

