"""Independent brute-force oracles. Deliberately naive; shares no code with the solvers."""
from collections import deque
from itertools import combinations, product

import numpy as np


def adjacency_sets(G):
    return [set(a) for a in G.adjacency]


def bfs(adj, s):
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def all_shortest_paths(adj, x, y):
    """Every shortest x,y-path as a vertex list, by DFS over the distance levels."""
    dx, dy = bfs(adj, x), bfs(adj, y)
    target = dx[y]
    out = []

    def walk(path):
        u = path[-1]
        if u == y:
            out.append(list(path))
            return
        for w in adj[u]:
            if dx.get(w) == dx[u] + 1 and dx[w] + dy[w] == target:
                path.append(w)
                walk(path)
                path.pop()

    walk([x])
    return out


def visible_by_paths(adj, X, x, y):
    if x == y:
        return True
    blockers = set(X) - {x, y}
    return any(not blockers & set(p[1:-1]) for p in all_shortest_paths(adj, x, y))


def is_mv_by_paths(G, X):
    adj = adjacency_sets(G)
    return all(visible_by_paths(adj, X, a, b) for a, b in combinations(sorted(X), 2))


def is_gp_by_paths(G, S):
    adj = adjacency_sets(G)
    for a, b in combinations(sorted(S), 2):
        for p in all_shortest_paths(adj, a, b):
            if set(p[1:-1]) & set(S):
                return False
    return True


def is_independent(G, X):
    return all(not G.has_edge(a, b) for a, b in combinations(X, 2))


def brute_max(G, predicate):
    """Largest subset passing ``predicate``, scanning all 2^n subsets."""
    best = 0
    for size in range(G.n, 0, -1):
        for X in combinations(range(G.n), size):
            if predicate(G, X):
                return size
    return best


def brute_mu(G):
    return brute_max(G, is_mv_by_paths)


def brute_mu_i(G):
    return brute_max(G, lambda G, X: is_independent(G, X) and is_mv_by_paths(G, X))


def brute_alpha(G):
    return brute_max(G, is_independent)


def brute_gp(G):
    return brute_max(G, is_gp_by_paths)


def brute_z22(m, n):
    """z(m, n; 2, 2) over all 2^(mn) matrices with a quadruple scan."""
    best = 0
    for cells in product((0, 1), repeat=m * n):
        if sum(cells) <= best:
            continue
        M = np.array(cells).reshape(m, n)
        if not any(
            M[i, j] and M[i, l] and M[k, j] and M[k, l]
            for i, k in combinations(range(m), 2)
            for j, l in combinations(range(n), 2)
        ):
            best = sum(cells)
    return best


def random_connected_graph(rng, n, p):
    """Random spanning tree plus independent extra edges with probability ``p``."""
    from mutvis.graph import build_graph

    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for a, b in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((a, b))
    return build_graph(n, sorted(edges))
