"""Edge-list text and graph6 reading/writing."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from .graph import Graph, GraphError, build_graph

GRAPH6_HEADER = ">>graph6<<"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


def parse_edge_list(text: str) -> tuple[Graph, tuple[int, ...]]:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment.

    Returns the graph and its label table (identity for this format).
    """
    header = None
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("negative count in header", lineno)
            header = (a, b, lineno)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"edge ({a}, {b}) references a vertex outside 0..{n - 1}", lineno)
        if a == b:
            raise ParseError(f"self-loop ({a}, {b})", lineno)
        edges.append((a, b))
        edge_lines.append(lineno)
    if header is None:
        raise ParseError("missing 'n m' header")
    n, m, hline = header
    if len(edges) != m:
        last = edge_lines[-1] if edge_lines else hline
        raise ParseError(f"header announces {m} edges, found {len(edges)}", last)
    return build_graph(n, edges), tuple(range(n))


def format_edge_list(g: Graph) -> str:
    edges = list(g.edges())
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def _encode_size(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"graph too large for graph6: n={n}")


def to_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g`` as a graph6 string (no trailing newline)."""
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        bits.extend(row >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return (GRAPH6_HEADER if header else "") + _encode_size(g.n) + body


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise ParseError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x < 64 for x in data):
        raise ParseError("graph6 contains characters outside '?'..'~'")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] == 63:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field")
        n, pos = 0, 8
        for x in data[2:8]:
            n = n << 6 | x
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field")
        n, pos = 0, 4
        for x in data[1:4]:
            n = n << 6 | x
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def looks_like_graph6(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(GRAPH6_HEADER):
            return True
        return " " not in line and "\t" not in line and all(63 <= ord(c) <= 126 for c in line)
    return False


def read_graph(path: Union[str, Path]) -> tuple[Graph, tuple[int, ...]]:
    """Read an edge-list or graph6 file, detected by extension then content."""
    path = Path(path)
    text = path.read_text()
    if path.suffix in (".g6", ".graph6") or looks_like_graph6(text):
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise ParseError("no graph6 line in file")
        try:
            g = from_graph6(lines[0])
        except GraphError as exc:
            raise ParseError(str(exc), 1) from None
        return g, tuple(range(g.n))
    return parse_edge_list(text)


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    return [from_graph6(ln) for ln in lines if ln.strip()]

