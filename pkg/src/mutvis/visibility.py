"""Geodesic intervals and the mutual-visibility / general-position predicates."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import DistanceMatrix, Graph, all_pairs_distances, bits_of, mask_of


@dataclass(frozen=True)
class GeodesicInterval:
    x: int
    y: int
    members: frozenset


def geodesic_interval(G: Graph, D: DistanceMatrix, x: int, y: int) -> GeodesicInterval:
    dxy = D.d[x][y]
    members = frozenset(v for v in range(G.n) if D.d[x][v] + D.d[v][y] == dxy)
    return GeodesicInterval(x, y, members)


class Geodesics:
    """Per-pair interval data of a connected graph, as bitmasks.

    For each pair ``x < y`` at distance at least 2 this stores the interior of
    the interval ``I(x, y) - {x, y}`` and its distance layers from ``x``; pairs
    at distance 1 have an empty interior and are always visible.
    """

    def __init__(self, G: Graph, D: DistanceMatrix | None = None):
        self.G = G
        self.D = D if D is not None else all_pairs_distances(G)
        n = G.n
        d = self.D.d
        self.interior = [[0] * n for _ in range(n)]
        self._layers: dict[tuple[int, int], tuple[int, ...]] = {}
        for x in range(n):
            dx = d[x]
            for y in range(x + 1, n):
                dxy = dx[y]
                if dxy < 2:
                    continue
                dy = d[y]
                layers = [0] * (dxy - 1)
                for v in range(n):
                    k = dx[v]
                    if 0 < k < dxy and k + dy[v] == dxy:
                        layers[k - 1] |= 1 << v
                inner = 0
                for layer in layers:
                    inner |= layer
                self.interior[x][y] = self.interior[y][x] = inner
                self._layers[x, y] = tuple(layers)

    def visible(self, x: int, y: int, blockers: int) -> bool:
        """Is there a shortest x,y-path whose interior avoids ``blockers``?"""
        if x == y:
            return True
        if x > y:
            x, y = y, x
        inner = self.interior[x][y]
        if not inner & blockers:
            return True
        nb = self.G.neighbor_bits
        reach = 1 << x
        for layer in self._layers[x, y]:
            step = 0
            for v in bits_of(reach):
                step |= nb[v]
            reach = step & layer & ~blockers
            if not reach:
                return False
        return True

    def is_mv(self, mask: int) -> bool:
        members = list(bits_of(mask))
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                if not self.visible(x, y, mask):
                    return False
        return True

    def can_extend(self, members: list[int], mask: int, v: int) -> bool:
        """Whether MV set ``mask`` (listed in ``members``) stays MV after adding ``v``.

        Rechecks pairs through ``v`` and every old pair whose interval interior
        contains ``v``.
        """
        new = mask | 1 << v
        bit = 1 << v
        interior = self.interior
        row = interior[v]
        for x in members:
            if row[x] & new and not self.visible(v, x, new):
                return False
        for i, a in enumerate(members):
            ra = interior[a]
            for b in members[i + 1 :]:
                if ra[b] & bit and not self.visible(a, b, new):
                    return False
        return True

    def is_gp(self, mask: int) -> bool:
        members = list(bits_of(mask))
        for i, x in enumerate(members):
            row = self.interior[x]
            for y in members[i + 1 :]:
                if row[y] & mask:
                    return False
        return True


def _ensure(G: Graph, D: DistanceMatrix | None) -> DistanceMatrix:
    return D if D is not None else all_pairs_distances(G)


def are_x_visible(G: Graph, D: DistanceMatrix | None, X: Iterable[int], x: int, y: int) -> bool:
    """Whether some shortest x,y-path meets ``X`` only in ``x`` and ``y``.

    The blockers are ``X - {x, y}`` whether or not the endpoints belong to ``X``.
    """
    D = _ensure(G, D)
    if x == y:
        return True
    dxy = D.d[x][y]
    blockers = mask_of(X) & ~(1 << x | 1 << y)
    reach = 1 << x
    for k in range(1, dxy + 1):
        layer = 0
        for v in range(G.n):
            if D.d[x][v] == k and D.d[v][y] == dxy - k:
                layer |= 1 << v
        step = 0
        for v in bits_of(reach):
            step |= G.neighbor_bits[v]
        reach = step & layer & ~blockers
        if not reach:
            return False
    return True


def is_mv_set(G: Graph, X: Iterable[int], D: DistanceMatrix | None = None) -> bool:
    D = _ensure(G, D)
    members = sorted(set(X))
    return all(
        are_x_visible(G, D, members, x, y)
        for i, x in enumerate(members)
        for y in members[i + 1 :]
    )


def is_independent_mv_set(G: Graph, X: Iterable[int], D: DistanceMatrix | None = None) -> bool:
    members = sorted(set(X))
    mask = mask_of(members)
    if any(G.neighbor_bits[v] & mask for v in members):
        return False
    return is_mv_set(G, members, D)


def is_gp_set(G: Graph, D: DistanceMatrix | None, S: Iterable[int]) -> bool:
    """No vertex of ``S`` lies on a geodesic between two other vertices of ``S``."""
    D = _ensure(G, D)
    members = sorted(set(S))
    d = D.d
    for u in members:
        for w in members:
            if u >= w:
                continue
            for v in members:
                if v != u and v != w and d[u][v] + d[v][w] == d[u][w]:
                    return False
    return True
