"""Immutable simple graphs over dense vertex ids, with bitset adjacency."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .bits import iter_bits, mask_of, to_set

BLACK = 0
WHITE = 1


class GraphError(ValueError):
    """Raised for malformed graph input."""

    def __init__(self, message: str, edge: Optional[tuple[int, int]] = None) -> None:
        super().__init__(message)
        self.edge = edge


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as an int bitset.  ``coloring``
    optionally assigns every vertex a side (``BLACK`` = X, ``WHITE`` = Y).
    """

    n: int
    adj: tuple[int, ...]
    coloring: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise GraphError(f"self-loop at {v}", (v, v))
            if row >> self.n:
                raise GraphError(f"neighbour of {v} out of range")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency {v}-{u}", (v, u))
        if self.coloring is not None:
            if len(self.coloring) != self.n:
                raise GraphError("coloring length does not match n")
            for u, v in self.edges():
                if self.coloring[u] == self.coloring[v]:
                    raise GraphError(f"edge {u}-{v} joins equal colors", (u, v))

    @cached_property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def closed(self) -> tuple[int, ...]:
        """Closed neighbourhoods N[v] as bitsets."""
        return tuple(row | 1 << v for v, row in enumerate(self.adj))

    @cached_property
    def ball2(self) -> tuple[int, ...]:
        """Vertices within distance 2 of ``v`` (including ``v``)."""
        closed = self.closed
        out = []
        for v in range(self.n):
            acc = 0
            for u in iter_bits(closed[v]):
                acc |= closed[u]
            out.append(acc)
        return tuple(out)

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def neighbors(self, v: int) -> frozenset[int]:
        return to_set(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, row in enumerate(self.adj):
            for u in iter_bits(row >> (v + 1)):
                yield v, v + 1 + u

    def with_coloring(self, coloring: Optional[Sequence[int]]) -> "Graph":
        return Graph(self.n, self.adj, None if coloring is None else tuple(coloring))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph relabelled densely; returns it with the old ids."""
        labels = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(labels)}
        keep = mask_of(labels)
        adj = tuple(mask_of(index[u] for u in iter_bits(self.adj[v] & keep)) for v in labels)
        coloring = None
        if self.coloring is not None:
            coloring = tuple(self.coloring[v] for v in labels)
        return Graph(len(labels), adj, coloring), labels

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list, dropping duplicate edges."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}", (u, v))
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})", (u, v))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` followed by ``h`` with ids shifted by ``g.n``."""
    return build_graph(g.n + h.n, [*g.edges(), *((u + g.n, v + g.n) for u, v in h.edges())])


def bipartition(g: Graph) -> Optional[tuple[int, ...]]:
    """A 2-coloring, or None when ``g`` has an odd cycle.

    Each component's lowest vertex is colored ``BLACK``.
    """
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = BLACK
        stack = [start]
        while stack:
            v = stack.pop()
            for u in iter_bits(g.adj[v]):
                if color[u] == -1:
                    color[u] = color[v] ^ 1
                    stack.append(u)
                elif color[u] == color[v]:
                    return None
    return tuple(color)


@dataclass(frozen=True)
class DistanceLevels:
    """BFS layering from ``root``; ``masks[i]`` is N_i, with ``masks[0] == {root}``."""

    root: int
    masks: tuple[int, ...]
    unreachable_mask: int = 0

    @property
    def depth(self) -> int:
        """Index of the last nonempty level."""
        return len(self.masks) - 1

    def level(self, i: int) -> int:
        return self.masks[i] if 0 <= i < len(self.masks) else 0

    @property
    def levels(self) -> tuple[frozenset[int], ...]:
        """N_1 .. N_k as frozensets."""
        return tuple(to_set(m) for m in self.masks[1:])

    @property
    def unreachable(self) -> frozenset[int]:
        return to_set(self.unreachable_mask)

    @cached_property
    def distance(self) -> dict[int, int]:
        return {v: i for i, m in enumerate(self.masks) for v in iter_bits(m)}

    @cached_property
    def reach_mask(self) -> int:
        acc = 0
        for m in self.masks:
            acc |= m
        return acc


def distance_levels(g: Graph, d: int, within: Optional[int] = None) -> DistanceLevels:
    """Distance levels of ``d``, optionally inside the vertex mask ``within``."""
    if not 0 <= d < g.n:
        raise ValueError(f"root {d} out of range")
    alive = g.all_mask if within is None else within
    if not alive >> d & 1:
        raise ValueError(f"root {d} not inside the vertex mask")
    masks = [1 << d]
    seen = 1 << d
    frontier = seen
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        nxt &= alive & ~seen
        if not nxt:
            break
        masks.append(nxt)
        seen |= nxt
        frontier = nxt
    return DistanceLevels(d, tuple(masks), alive & ~seen)


def component_masks(g: Graph, within: Optional[int] = None) -> list[int]:
    """Connected components of ``g[within]`` ordered by lowest vertex."""
    rest = g.all_mask if within is None else within
    out = []
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & rest & ~seen
            seen |= frontier
        out.append(seen)
        rest &= ~seen
    return out


def components(g: Graph) -> list[frozenset[int]]:
    return [to_set(m) for m in component_masks(g)]


def _check_disjoint(u_mask: int, w_mask: int) -> None:
    if u_mask & w_mask:
        raise ValueError(f"sets overlap in {sorted(to_set(u_mask & w_mask))}")


def is_join(g: Graph, U: Iterable[int], W: Iterable[int]) -> bool:
    """True iff every vertex of U is adjacent to every vertex of W."""
    u_mask, w_mask = mask_of(U), mask_of(W)
    _check_disjoint(u_mask, w_mask)
    return all(g.adj[u] & w_mask == w_mask for u in iter_bits(u_mask))


def is_cojoin(g: Graph, U: Iterable[int], W: Iterable[int]) -> bool:
    """True iff no vertex of U is adjacent to any vertex of W."""
    u_mask, w_mask = mask_of(U), mask_of(W)
    _check_disjoint(u_mask, w_mask)
    return all(not g.adj[u] & w_mask for u in iter_bits(u_mask))


def eccentricity_bound(g: Graph) -> int:
    """Largest BFS depth over all roots (the diameter for connected graphs)."""
    return max((distance_levels(g, v).depth for v in range(g.n)), default=0)


__all__ = [
    "BLACK",
    "WHITE",
    "DistanceLevels",
    "Graph",
    "GraphError",
    "bipartition",
    "build_graph",
    "component_masks",
    "components",
    "disjoint_union",
    "distance_levels",
    "eccentricity_bound",
    "is_cojoin",
    "is_join",
]
