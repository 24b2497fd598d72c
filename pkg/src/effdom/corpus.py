"""Test corpora: every connected bipartite graph up to isomorphism, and
seeded random class members.

Enumeration grows graphs one vertex at a time.  Every connected bipartite
graph has a vertex whose removal keeps it connected (a leaf of a spanning
tree), so adding a vertex joined to a nonempty subset of one color class of
each smaller graph reaches every isomorphism class.  Duplicates are removed by
bucketing on a color-refinement invariant and testing isomorphism inside the
bucket with networkx.
"""

from __future__ import annotations

import random
from typing import Iterator

import networkx as nx

from .bits import iter_bits
from .generate import random_bipartite
from .graph import Graph, bipartition, build_graph, component_masks
from .recognize import is_s133_free_bipartite

# connected bipartite graphs on n unlabeled vertices, n = 1..10
KNOWN_COUNTS = {1: 1, 2: 1, 3: 1, 4: 3, 5: 5, 6: 17, 7: 44, 8: 182, 9: 730, 10: 4032}


def _graph_of(adj: tuple[int, ...]) -> Graph:
    n = len(adj)
    g = build_graph(n, [(u, v) for v in range(n) for u in iter_bits(adj[v]) if u < v])
    return g.with_coloring(bipartition(g))


def _invariant(adj: tuple[int, ...], rounds: int = 3) -> tuple:
    n = len(adj)
    col = [a.bit_count() for a in adj]
    key: tuple = tuple(sorted(col))
    for _ in range(rounds):
        sig = [(col[v], tuple(sorted(col[u] for u in iter_bits(adj[v])))) for v in range(n)]
        ids = {s: i for i, s in enumerate(sorted(set(sig)))}
        col = [ids[s] for s in sig]
        key = tuple(sorted(sig))
    return key


def _nx(adj: tuple[int, ...]) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(len(adj)))
    h.add_edges_from((u, v) for v in range(len(adj)) for u in iter_bits(adj[v]) if u < v)
    return h


def connected_bipartite_by_order(max_n: int) -> dict[int, list[Graph]]:
    """Connected bipartite graphs with 1..max_n vertices, one per isomorphism class."""
    if max_n < 1:
        return {}
    layers: dict[int, list[tuple[int, ...]]] = {1: [(0,)]}
    for n in range(2, max_n + 1):
        buckets: dict[tuple, list[nx.Graph]] = {}
        out: list[tuple[int, ...]] = []
        new_bit = 1 << (n - 1)
        for adj in layers[n - 1]:
            coloring = bipartition(_graph_of(adj))
            for side in (0, 1):
                members = [v for v in range(n - 1) if coloring[v] == side]
                for pick in range(1, 1 << len(members)):
                    nb = 0
                    for j, v in enumerate(members):
                        if pick >> j & 1:
                            nb |= 1 << v
                    grown = tuple(a | new_bit if nb >> v & 1 else a for v, a in enumerate(adj))
                    grown += (nb,)
                    seen = buckets.setdefault(_invariant(grown), [])
                    h = _nx(grown)
                    if any(nx.is_isomorphic(h, other) for other in seen):
                        continue
                    seen.append(h)
                    out.append(grown)
        layers[n] = out
    return {n: [_graph_of(adj) for adj in layer] for n, layer in layers.items()}


def connected_bipartite_graphs(max_n: int) -> Iterator[Graph]:
    for layer in connected_bipartite_by_order(max_n).values():
        yield from layer


def class_members(max_n: int) -> list[Graph]:
    """Connected S_{1,3,3}-free bipartite graphs with at most ``max_n`` vertices."""
    return [g for g in connected_bipartite_graphs(max_n) if is_s133_free_bipartite(g).member]


def random_class_members(
    count: int, min_n: int, max_n: int, seed: int, connected: bool = True
) -> Iterator[Graph]:
    """Seeded stream of random S_{1,3,3}-free bipartite graphs.

    Orders are uniform in [min_n, max_n], the side split and edge density are
    drawn per sample, and samples outside the class are rejected.
    """
    rng = random.Random(seed)
    made = 0
    while made < count:
        n = rng.randint(min_n, max_n)
        nx_side = rng.randint(1, max(1, n - 1))
        p = rng.uniform(0.1, 0.9)
        g = random_bipartite(nx_side, n - nx_side, p, rng.getrandbits(64))
        if connected and len(component_masks(g)) != 1:
            continue
        if not is_s133_free_bipartite(g).member:
            continue
        made += 1
        yield g
