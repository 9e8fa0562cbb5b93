"""Exact Zarankiewicz numbers z(m, n; s, t), the classical bounds, and the
correspondence between 2x2-free 0/1 matrices and mutual-visibility sets of
``K_m □ K_n``.

An ``s x t`` block means ``s`` rows by ``t`` columns. Rows are held internally
as bitmasks with column ``j`` at bit ``j``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from .graph import GraphError, ProductLabeling, bits_of
from .solvers import CapExceededError

MAX_DIM_22 = 7
MAX_CELLS = 49


@dataclass(frozen=True)
class ZInstance:
    m: int
    n: int
    s: int = 2
    t: int = 2

    def __post_init__(self):
        if min(self.m, self.n, self.s, self.t) < 1:
            raise ValueError(f"all of m, n, s, t must be >= 1: {self}")


@dataclass(frozen=True)
class ZResult:
    instance: ZInstance
    value: int
    witness: np.ndarray
    complete: bool = True


def rows_to_matrix(rows: Iterable[int], n: int) -> np.ndarray:
    rows = list(rows)
    out = np.zeros((len(rows), n), dtype=np.uint8)
    for i, r in enumerate(rows):
        for j in bits_of(r):
            out[i, j] = 1
    return out


def matrix_to_rows(M: np.ndarray) -> list[int]:
    return [sum(1 << j for j in range(M.shape[1]) if M[i, j]) for i in range(M.shape[0])]


def format_matrix(M: np.ndarray) -> list[str]:
    """Rows of ``0``/``1`` characters."""
    return ["".join(str(int(x)) for x in row) for row in M]


def parse_matrix(lines: Iterable[str]) -> np.ndarray:
    rows = [ln.strip() for ln in lines if ln.strip()]
    if not rows or len({len(r) for r in rows}) != 1 or set("".join(rows)) - {"0", "1"}:
        raise ValueError("matrix rows must be equal-length strings of 0/1")
    return np.array([[int(c) for c in r] for r in rows], dtype=np.uint8)


def has_all_ones_block(M: np.ndarray, s: int, t: int) -> bool:
    """Direct scan over every choice of ``s`` rows and ``t`` columns."""
    M = np.asarray(M)
    m, n = M.shape
    for rows in combinations(range(m), s):
        common = np.all(M[list(rows)] == 1, axis=0)
        if common.sum() >= t:
            return True
    return False


def is_2x2_free(M: np.ndarray) -> bool:
    """Quadruple scan: no rows i<k and columns j<l with all four entries 1."""
    M = np.asarray(M)
    m, n = M.shape
    for i in range(m):
        for k in range(i + 1, m):
            for j in range(n):
                for l in range(j + 1, n):
                    if M[i, j] and M[i, l] and M[k, j] and M[k, l]:
                        return False
    return True


class _Deadline:
    def __init__(self, timeout: float | None):
        self.at = time.monotonic() + timeout if timeout else float("inf")
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.ticks & 1023 == 0 and time.monotonic() > self.at:
            raise TimeoutError


def _pair_bound(rows_left: int, pairs_left: int, n: int) -> int:
    """Max total weight of ``rows_left`` rows using at most ``pairs_left`` column pairs."""
    if rows_left == 0:
        return 0
    w = n
    while w > 0 and rows_left * (w * (w - 1) // 2) > pairs_left:
        w -= 1
    if w == n:
        return rows_left * n
    extra = (pairs_left - rows_left * (w * (w - 1) // 2)) // w
    return rows_left * w + min(rows_left, extra)


class _Z22:
    """Row-by-row search for 2x2-free matrices: each column pair may appear in one row only."""

    def __init__(self, n: int, deadline: _Deadline):
        self.n = n
        self.deadline = deadline
        index = {p: k for k, p in enumerate(combinations(range(n), 2))}
        self.npairs = len(index)
        self.pairs = [0] * (1 << n)
        for row in range(1 << n):
            cols = list(bits_of(row))
            self.pairs[row] = sum(1 << index[p] for p in combinations(cols, 2))
        self.weight = [row.bit_count() for row in range(1 << n)]
        # Column 0 is the leftmost character, so it is the most significant digit.
        self.lex_key = [
            sum(1 << (n - 1 - j) for j in bits_of(row)) for row in range(1 << n)
        ]
        self.by_weight = sorted(range(1 << n), key=lambda r: (-self.weight[r], -self.lex_key[r]))
        self.by_lex = sorted(range(1 << n), key=lambda r: -self.lex_key[r])
        self.exact = [0]  # exact[k] = z(k, n; 2, 2), filled by value()

    def _ub(self, rows_left: int, used: int) -> int:
        free = self.npairs - used.bit_count()
        return min(self.exact[rows_left], _pair_bound(rows_left, free, self.n))

    def value(self, m: int) -> int:
        """Exact z(k, n; 2, 2) for k = 1..m, rows in nonincreasing weight order."""
        while len(self.exact) <= m:
            k = len(self.exact)
            best = [0]

            def rec(row: int, total: int, used: int, cap: int) -> None:
                self.deadline.tick()
                if row == k:
                    best[0] = max(best[0], total)
                    return
                left = k - row
                for r in self.by_weight:
                    w = self.weight[r]
                    if w > cap:
                        continue
                    if total + w * left <= best[0]:
                        return
                    if self.pairs[r] & used:
                        continue
                    if total + w + self._ub(left - 1, used | self.pairs[r]) <= best[0]:
                        continue
                    rec(row + 1, total + w, used | self.pairs[r], w)

            rec(0, 0, 0, self.n)
            self.exact.append(best[0])
        return self.exact[m]

    def canonical(self, m: int, target: int) -> list[int]:
        """Lexicographically largest row-major witness with ``target`` ones."""
        self.value(m)
        chosen: list[int] = []
        # (row, used pairs) -> smallest number of ones already shown unreachable
        failed: dict[tuple[int, int], int] = {}

        def rec(row: int, total: int, used: int) -> bool:
            self.deadline.tick()
            if row == m:
                return total == target
            need = target - total
            if failed.get((row, used), need + 1) <= need:
                return False
            left = m - row - 1
            for r in self.by_lex:
                if self.pairs[r] & used:
                    continue
                nu = used | self.pairs[r]
                if total + self.weight[r] + self._ub(left, nu) < target:
                    continue
                chosen.append(r)
                if rec(row + 1, total + self.weight[r], nu):
                    return True
                chosen.pop()
            failed[row, used] = need
            return False

        if not rec(0, 0, 0):
            raise AssertionError("no witness reaches the computed optimum")
        return chosen


def _z_general(inst: ZInstance, deadline: _Deadline) -> tuple[int, list[int]]:
    """Cell-by-cell depth-first search; ones tried first, so the first optimum
    found is the lexicographically largest."""
    m, n, s, t = inst.m, inst.n, inst.s, inst.t
    rows = [0] * m
    best = [-1, [0] * m]

    def creates_block(i: int, j: int) -> bool:
        others = [c for c in bits_of(rows[i]) if c != j]
        for extra in combinations(others, t - 1):
            cols = 1 << j
            for c in extra:
                cols |= 1 << c
            if sum(1 for k in range(i) if rows[k] & cols == cols) >= s - 1:
                return True
        return False

    def rec(cell: int, ones: int) -> None:
        deadline.tick()
        if ones + (m * n - cell) <= best[0]:
            return
        if cell == m * n:
            best[0], best[1] = ones, list(rows)
            return
        i, j = divmod(cell, n)
        rows[i] |= 1 << j
        if not creates_block(i, j):
            rec(cell + 1, ones + 1)
        rows[i] &= ~(1 << j)
        rec(cell + 1, ones)

    rec(0, 0)
    return best[0], best[1]


def z_exact(inst: ZInstance, timeout: float | None = 60.0) -> ZResult:
    """Exact z(m, n; s, t) with the lexicographically largest optimal witness.

    ``(2, 2)`` instances with ``m, n <= 7`` use the row search; other
    instances use the cell search and are limited to ``m * n <= 49``.
    """
    deadline = _Deadline(timeout)
    if (inst.s, inst.t) == (2, 2) and max(inst.m, inst.n) <= MAX_DIM_22:
        solver = _Z22(inst.n, deadline)
        try:
            value = solver.value(inst.m)
            rows = solver.canonical(inst.m, value)
        except TimeoutError:
            return ZResult(inst, 0, np.zeros((inst.m, inst.n), dtype=np.uint8), complete=False)
        return ZResult(inst, value, rows_to_matrix(rows, inst.n))
    if inst.m * inst.n > MAX_CELLS:
        raise CapExceededError(
            f"z({inst.m},{inst.n};{inst.s},{inst.t}) exceeds the exact-search cap"
        )
    try:
        value, rows = _z_general(inst, deadline)
    except TimeoutError:
        return ZResult(inst, 0, np.zeros((inst.m, inst.n), dtype=np.uint8), complete=False)
    return ZResult(inst, value, rows_to_matrix(rows, inst.n))


def kst_upper(inst: ZInstance) -> float:
    """Kővári–Sós–Turán: z(m,n;s,t) < (s-1)^(1/t) (n-t+1) m^(1-1/t) + (t-1) m."""
    m, n, s, t = inst.m, inst.n, inst.s, inst.t
    if s <= 1 or t <= 1:
        raise ValueError("the Kővári–Sós–Turán bound needs s, t > 1")
    return (s - 1) ** (1 / t) * (n - t + 1) * m ** (1 - 1 / t) + (t - 1) * m


def projective_lower(inst: ZInstance) -> int:
    """floor((1 - 1/(s! t!)) m^(1-a) n^(1-b)) with a = (s-1)/(st-1), b = (t-1)/(st-1).

    The floor is settled in exact rational arithmetic: with ``q = st - 1`` the
    value ``v`` satisfies ``v^q = c^q m^(q-s+1) n^(q-t+1)``.
    """
    m, n, s, t = inst.m, inst.n, inst.s, inst.t
    q = s * t - 1
    if q == 0:
        raise ValueError("degenerate instance s = t = 1")
    c = 1 - Fraction(1, math.factorial(s) * math.factorial(t))
    power = c**q * Fraction(m) ** (q - s + 1) * Fraction(n) ** (q - t + 1)
    k = math.floor(float(c) * m ** (1 - (s - 1) / q) * n ** (1 - (t - 1) / q))
    while k > 0 and Fraction(k) ** q > power:
        k -= 1
    while Fraction(k + 1) ** q <= power:
        k += 1
    return k


def erdos_window(n: int) -> tuple[float, float]:
    """The large-n window n^(3/2) - n^(4/3) <= z(n,n;2,2) <= n(1 + sqrt(4n-3))/4.

    Both formulas are evaluated as stated. The upper value sits below the exact
    z(n,n;2,2) for every n from 2 to 7 (z(7,7;2,2) = 21 against 10.5); the
    counting bound n(1 + sqrt(4n-3))/2 is the one exact values respect.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return n**1.5 - n ** (4 / 3), n * (1 + math.sqrt(4 * n - 3)) / 4


def _check_labeling(labeling: ProductLabeling, shape: tuple[int, int] | None = None) -> None:
    if shape is not None and shape != (labeling.g_order, labeling.h_order):
        raise GraphError(
            f"matrix shape {shape} does not match product {labeling.g_order}x{labeling.h_order}"
        )


def mv_set_to_matrix(X: Iterable[int], labeling: ProductLabeling) -> np.ndarray:
    """0/1 matrix with entry (i, k) = 1 iff product vertex (i, k) is in ``X``."""
    M = np.zeros((labeling.g_order, labeling.h_order), dtype=np.uint8)
    for v in X:
        M[labeling.backward(v)] = 1
    return M


def matrix_to_mv_set(M: np.ndarray, labeling: ProductLabeling) -> frozenset:
    M = np.asarray(M)
    _check_labeling(labeling, M.shape)
    return frozenset(labeling.forward(int(i), int(k)) for i, k in zip(*np.nonzero(M)))
