"""Instance families: paths, cycles, and seeded random bipartite graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, bipartition, build_graph, component_masks


class GenerationError(RuntimeError):
    """Rejection sampling ran out of attempts."""

    def __init__(self, message: str, attempts: int) -> None:
        super().__init__(message)
        self.attempts = attempts


@dataclass(frozen=True)
class Generated:
    graph: Graph
    attempts: int = 1


def path_graph(k: int) -> Graph:
    """P_k on vertices 0..k-1 in path order."""
    g = build_graph(k, [(i, i + 1) for i in range(k - 1)])
    return g.with_coloring(bipartition(g))


def cycle_graph(k: int) -> Graph:
    """C_k on vertices 0..k-1 in cyclic order; colored when k is even."""
    if k < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {k}")
    g = build_graph(k, [(i, (i + 1) % k) for i in range(k)])
    return g.with_coloring(bipartition(g))


def random_bipartite(nx: int, ny: int, p: float, seed: int) -> Graph:
    """X = 0..nx-1, Y = nx..nx+ny-1, each cross pair an edge with probability p."""
    if nx < 0 or ny < 0:
        raise ValueError("side sizes must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [(x, nx + y) for x in range(nx) for y in range(ny) if rng.random() < p]
    g = build_graph(nx + ny, edges)
    return g.with_coloring([0] * nx + [1] * ny)


def random_s133_free_bipartite(
    nx: int,
    ny: int,
    p: float,
    seed: int,
    max_attempts: int = 10_000,
    connected: bool = False,
) -> Generated:
    """Rejection-sample ``random_bipartite`` until the graph is S_{1,3,3}-free.

    Per-attempt seeds come from a master RNG seeded with ``seed``.
    """
    from .recognize import S133, find_induced_sijk

    master = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        g = random_bipartite(nx, ny, p, master.getrandbits(64))
        if connected and len(component_masks(g)) > 1:
            continue
        if find_induced_sijk(g, S133) is None:
            return Generated(g, attempt)
    raise GenerationError(
        f"no S_1,3,3-free sample in {max_attempts} attempts (nx={nx}, ny={ny}, p={p})",
        max_attempts,
    )


def generate(kind: str, *params: float, seed: int = 0, max_attempts: int = 10_000) -> Generated:
    """Dispatch on ``kind``: path k | cycle k | random_bipartite nx ny p |
    random_s133_free_bipartite nx ny p."""
    if kind == "path":
        (k,) = params
        return Generated(path_graph(int(k)))
    if kind == "cycle":
        (k,) = params
        return Generated(cycle_graph(int(k)))
    if kind == "random_bipartite":
        nx, ny, p = params
        return Generated(random_bipartite(int(nx), int(ny), float(p), seed))
    if kind == "random_s133_free_bipartite":
        nx, ny, p = params
        return random_s133_free_bipartite(int(nx), int(ny), float(p), seed, max_attempts)
    raise ValueError(f"unknown graph kind {kind!r}")
