"""Simple undirected graphs on dense vertex indices, distances and derived graphs.

Vertex sets are passed around as ``frozenset[int]`` at the API boundary and as
Python ``int`` bitmasks internally (bit ``v`` set iff vertex ``v`` is present).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

VertexSet = frozenset


class GraphError(ValueError):
    """Raised for malformed graph input."""


class DisconnectedGraphError(GraphError):
    """Raised when an operation needs a connected graph."""


def bits_of(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``labels`` is an optional side table (e.g. product coordinates); no
    algorithm consults it.
    """

    __slots__ = ("n", "adjacency", "neighbor_bits", "labels", "_m")

    def __init__(self, n: int, adjacency: Sequence[Sequence[int]], labels=None):
        self.n = n
        self.adjacency = tuple(tuple(sorted(a)) for a in adjacency)
        self.neighbor_bits = tuple(mask_of(a) for a in self.adjacency)
        self.labels = tuple(labels) if labels is not None else None
        self._m = sum(len(a) for a in self.adjacency) // 2

    @property
    def m(self) -> int:
        return self._m

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.neighbor_bits[u] >> v & 1)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits_of(frontier):
                nxt |= self.neighbor_bits[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.all_mask

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedGraphError(f"graph on {self.n} vertices is disconnected")

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``G[W]`` relabelled to ``0..|W|-1`` and the old index of each new vertex."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        adj = [[index[w] for w in self.adjacency[v] if w in index] for v in order]
        return Graph(len(order), adj), order

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
    """Build a graph from an edge list, collapsing duplicate edges."""
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj, labels)


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances of a connected graph."""

    d: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def diam(self) -> int:
        return max(max(row) for row in self.d)

    def __call__(self, u: int, v: int) -> int:
        return self.d[u][v]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.d, dtype=np.int64)


def bfs_distances(G: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; ``-1`` marks unreachable vertices."""
    dist = [-1] * G.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in G.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_pairs_distances(G: Graph) -> DistanceMatrix:
    rows = []
    for s in range(G.n):
        dist = bfs_distances(G, s)
        if -1 in dist:
            raise DisconnectedGraphError(
                f"vertex {dist.index(-1)} unreachable from {s}; graph is disconnected"
            )
        rows.append(tuple(dist))
    return DistanceMatrix(tuple(rows))


@dataclass(frozen=True)
class ProductLabeling:
    """Coordinates of the vertices of ``G □ H``: vertex ``g * h_order + h`` is ``(g, h)``."""

    g_order: int
    h_order: int

    def forward(self, g: int, h: int) -> int:
        if not (0 <= g < self.g_order and 0 <= h < self.h_order):
            raise GraphError(f"({g}, {h}) is not a product vertex")
        return g * self.h_order + h

    def backward(self, v: int) -> tuple[int, int]:
        if not 0 <= v < self.g_order * self.h_order:
            raise GraphError(f"{v} is not a product vertex")
        return divmod(v, self.h_order)

    def g_layer(self, h: int) -> VertexSet:
        """Vertices of the G-layer through second coordinate ``h``."""
        return frozenset(self.forward(g, h) for g in range(self.g_order))

    def h_layer(self, g: int) -> VertexSet:
        """Vertices of the H-layer through first coordinate ``g``."""
        return frozenset(self.forward(g, h) for h in range(self.h_order))


def cartesian_product(G: Graph, H: Graph) -> tuple[Graph, ProductLabeling]:
    lab = ProductLabeling(G.n, H.n)
    edges = []
    for g in range(G.n):
        for h in range(H.n):
            v = lab.forward(g, h)
            for g2 in G.adjacency[g]:
                if g < g2:
                    edges.append((v, lab.forward(g2, h)))
            for h2 in H.adjacency[h]:
                if h < h2:
                    edges.append((v, lab.forward(g, h2)))
    labels = [lab.backward(v) for v in range(G.n * H.n)]
    return build_graph(G.n * H.n, edges, labels=labels), lab


def edgeless(k: int) -> Graph:
    return build_graph(k, [])


def corona(G: Graph, H: Graph | int) -> Graph:
    """Corona ``G ∘ H``; an int ``k`` for ``H`` stands for the edgeless graph on ``k`` vertices.

    Copy ``i`` of ``H`` occupies vertices ``n(G) + i*n(H) .. n(G) + (i+1)*n(H) - 1``.
    """
    if isinstance(H, int):
        H = edgeless(H)
    n, k = G.n, H.n
    edges = list(G.edges)
    for i in range(n):
        base = n + i * k
        edges.extend((base + a, base + b) for a, b in H.edges)
        edges.extend((i, base + j) for j in range(k))
    return build_graph(n * (1 + k), edges)


def is_triangle_free(G: Graph) -> bool:
    nb = G.neighbor_bits
    for u in range(G.n):
        for v in G.adjacency[u]:
            if u < v and nb[u] & nb[v]:
                return False
    return True


def max_degree(G: Graph) -> int:
    return max(G.degrees())


def is_isometric_subgraph(G: Graph, W: Iterable[int], D: DistanceMatrix | None = None) -> bool:
    """Whether the induced subgraph ``G[W]`` preserves all distances of ``G``."""
    sub, order = G.induced_subgraph(W)
    sub_d = all_pairs_distances(sub)
    if D is None:
        D = all_pairs_distances(G)
    return all(
        sub_d.d[i][j] == D.d[order[i]][order[j]]
        for i in range(sub.n)
        for j in range(i + 1, sub.n)
    )


def fingerprint(G: Graph) -> tuple:
    """Isomorphism invariant: sorted degree sequence plus sorted distance multiset.

    Disconnected graphs get ``-1`` entries for unreachable pairs.
    """
    dist = [bfs_distances(G, s) for s in range(G.n)]
    pairs = sorted(dist[i][j] for i in range(G.n) for j in range(i + 1, G.n))
    return (G.n, G.m, tuple(sorted(G.degrees())), tuple(pairs))


def find_isomorphism(G: Graph, H: Graph) -> list[int] | None:
    """Backtracking isomorphism search; returns ``perm`` with ``G.relabel(perm) == H``."""
    if fingerprint(G) != fingerprint(H):
        return None
    n = G.n
    dg, dh = G.degrees(), H.degrees()
    perm = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or dg[v] != dh[w]:
                continue
            if any(H.has_edge(perm[u], w) != G.has_edge(u, v) for u in range(v)):
                continue
            perm[v] = w
            used[w] = True
            if extend(v + 1):
                return True
            used[w] = False
        perm[v] = -1
        return False

    return perm if extend(0) else None


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return find_isomorphism(G, H) is not None


def _refine(G: Graph) -> list[int]:
    """Stable colour refinement starting from degrees; colours are canonical ranks."""
    colors = G.degrees()
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in G.adjacency[v]))) for v in range(G.n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(G: Graph) -> tuple[int, int]:
    """Exact canonical code ``(n, adjacency bits)`` for small graphs.

    Minimises the upper-triangle bit string over all vertex orderings that list
    colour classes of the refined partition in increasing colour order. Cost
    grows with the product of class-size factorials, so this is meant for
    ``n <= 10``.
    """
    colors = _refine(G)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    groups = [classes[c] for c in sorted(classes)]
    best = None

    def orders(i: int, prefix: list[int]):
        if i == len(groups):
            yield prefix
            return
        for p in permutations(groups[i]):
            yield from orders(i + 1, prefix + list(p))

    for order in orders(0, []):
        code = 0
        for j in range(1, G.n):
            vj = order[j]
            for i in range(j):
                code = code << 1 | G.has_edge(order[i], vj)
        if best is None or code < best:
            best = code
    return (G.n, best or 0)
