"""graph6 and edge-list serialisation.

graph6 follows McKay's format: ``N(n)`` followed by the upper triangle of the
adjacency matrix read column by column (``x(0,1), x(0,2), x(1,2), x(0,3) ...``),
packed six bits per byte with 63 added.
"""
from __future__ import annotations

from pathlib import Path

from .graph import Graph, GraphError, build_graph

HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise GraphError(f"graph too large for graph6: n={n}")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return ``(n, bytes consumed)``."""
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        chunk, offset = data[2:8], 8
    else:
        chunk, offset = data[1:4], 4
    n = 0
    for b in chunk:
        n = n << 6 | (b - 63)
    return n, offset


def to_graph6(G: Graph, header: bool = False) -> str:
    bits = [G.has_edge(i, j) for j in range(1, G.n) for i in range(j)]
    bits += [False] * (-len(bits) % 6)
    body = bytes(
        63 + sum(bit << (5 - k) for k, bit in enumerate(bits[i : i + 6]))
        for i in range(0, len(bits), 6)
    )
    out = (_encode_n(G.n) + body).decode("ascii")
    return HEADER + out if header else out


def from_graph6(text: str | bytes) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else text
    data = data.strip()
    if data.startswith(HEADER.encode()):
        data = data[len(HEADER) :]
    if any(b < 63 or b > 126 for b in data):
        raise GraphError("invalid character in graph6 string")
    n, offset = _decode_n(data)
    body = data[offset:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def to_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise GraphError("empty edge list")
    try:
        n, m = (int(x) for x in rows[0])
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"edge list declares {m} edges but has {len(edges)}")
    return build_graph(n, edges)


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    """Read one graph; format inferred from the suffix (``.g6`` is graph6) unless given."""
    path = Path(path)
    if fmt is None:
        fmt = "graph6" if path.suffix in (".g6", ".graph6") else "edgelist"
    text = path.read_text()
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise GraphError(f"{path}: expected exactly one graph6 line, got {len(lines)}")
        return from_graph6(lines[0])
    if fmt == "edgelist":
        return from_edge_list(text)
    raise GraphError(f"unknown graph format {fmt!r}")


def write_graph(G: Graph, path: str | Path, fmt: str = "graph6") -> None:
    text = to_graph6(G) + "\n" if fmt == "graph6" else to_edge_list(G)
    Path(path).write_text(text)
