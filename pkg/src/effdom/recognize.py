"""Induced subdivided-star (S_{i,j,k}) detection and the anchored P8 test."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .bits import iter_bits, lowest, mask_of
from .graph import DistanceLevels, Graph, bipartition


@dataclass(frozen=True)
class PatternSpec:
    """S_{i,j,k}: a midpoint with three induced legs of i, j and k vertices."""

    i: int
    j: int
    k: int

    def __post_init__(self) -> None:
        if min(self.i, self.j, self.k) < 0:
            raise ValueError(f"leg lengths must be non-negative: {self}")

    @property
    def legs(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    @property
    def order(self) -> int:
        return self.i + self.j + self.k + 1


S133 = PatternSpec(1, 3, 3)


@dataclass(frozen=True)
class PatternWitness:
    """An embedding: ``legs[t]`` lists leg ``t`` outward from the midpoint."""

    spec: PatternSpec
    midpoint: int
    legs: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.midpoint, *self.legs[0], *self.legs[1], *self.legs[2])

    def pattern_edges(self) -> set[frozenset[int]]:
        edges = set()
        for leg in self.legs:
            prev = self.midpoint
            for v in leg:
                edges.add(frozenset((prev, v)))
                prev = v
        return edges


def verify_witness(g: Graph, w: PatternWitness) -> bool:
    """True iff ``w`` is an induced copy of its pattern in ``g``."""
    if tuple(len(leg) for leg in w.legs) != w.spec.legs:
        return False
    vs = w.vertices
    if len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
        return False
    induced = {frozenset((a, b)) for a, b in combinations(vs, 2) if g.has_edge(a, b)}
    return induced == w.pattern_edges()


def find_induced_sijk(
    g: Graph, spec: PatternSpec, brute_force: bool = False
) -> Optional[PatternWitness]:
    """Return an induced S_{i,j,k} of ``g`` or None.

    The default search anchors a midpoint (highest degree first) and then
    places the remaining pattern vertices most-constrained-first: every
    placement narrows the candidate sets of the others to its neighbours
    (pattern edge) or its non-neighbours (pattern non-edge).  On bipartite
    inputs leg positions are further restricted to the matching color class.
    ``brute_force`` instead tests every vertex subset of the pattern's order;
    it is meant as a test oracle.
    """
    w = _brute_force(g, spec) if brute_force else _anchored(g, spec)
    if w is not None and not verify_witness(g, w):
        raise AssertionError(f"recognizer produced an invalid witness {w}")
    return w


def _anchored(g: Graph, spec: PatternSpec) -> Optional[PatternWitness]:
    adj, closed = g.adj, g.closed
    # pattern vertex 0 is the midpoint; then legs i, j, k outward
    owner: list[tuple[int, int]] = [(-1, 0)]
    for leg, length in enumerate(spec.legs):
        owner.extend((leg, pos) for pos in range(1, length + 1))
    size = len(owner)
    pat_adj = [0] * size
    for p in range(1, size):
        leg, pos = owner[p]
        q = 0 if pos == 1 else p - 1
        pat_adj[p] |= 1 << q
        pat_adj[q] |= 1 << p
    need_deg = sum(1 for length in spec.legs if length > 0)
    coloring = bipartition(g)
    sides = [0, 0]
    if coloring is not None:
        for v, c in enumerate(coloring):
            sides[c] |= 1 << v

    assign = [0] * size
    # candidate masks of unassigned pattern vertices, narrowed by forward checking
    def search(cands: list[int], todo: int) -> bool:
        if not todo:
            return True
        best, best_count = -1, 1 << 30
        for p in iter_bits(todo):
            c = cands[p].bit_count()
            if c < best_count:
                best, best_count = p, c
                if c == 0:
                    return False
        rest = todo & ~(1 << best)
        pool = cands[best]
        while pool:
            low = pool & -pool
            v = low.bit_length() - 1
            pool ^= low
            nxt = cands[:]
            ok = True
            for p in iter_bits(rest):
                nxt[p] &= adj[v] if pat_adj[best] >> p & 1 else ~closed[v]
                if not nxt[p]:
                    ok = False
                    break
            if ok:
                assign[best] = v
                if search(nxt, rest):
                    return True
        return False

    everyone = g.all_mask
    for mid in sorted(range(g.n), key=lambda v: (-adj[v].bit_count(), v)):
        if adj[mid].bit_count() < need_deg:
            continue
        cands = [0] * size
        for p in range(1, size):
            _, pos = owner[p]
            dom = adj[mid] if pos == 1 else everyone & ~closed[mid]
            if coloring is not None:
                dom &= sides[coloring[mid] ^ (pos & 1)]
            cands[p] = dom
        assign[0] = mid
        if search(cands, ((1 << size) - 1) & ~1):
            legs: list[list[int]] = [[], [], []]
            for p in range(1, size):
                legs[owner[p][0]].append(assign[p])
            return PatternWitness(spec, mid, (tuple(legs[0]), tuple(legs[1]), tuple(legs[2])))
    return None


def _brute_force(g: Graph, spec: PatternSpec) -> Optional[PatternWitness]:
    size = spec.order
    if size > g.n:
        return None
    positive = sorted(x for x in spec.legs if x > 0)
    for subset in combinations(range(g.n), size):
        w = _match_subset(g, subset, spec, positive)
        if w is not None:
            return w
    return None


def _match_subset(
    g: Graph, subset: tuple[int, ...], spec: PatternSpec, positive: list[int]
) -> Optional[PatternWitness]:
    """Classify ``g[subset]`` as a spider/path and compare with ``spec``."""
    sub = mask_of(subset)
    deg = {v: (g.adj[v] & sub).bit_count() for v in subset}
    if sum(deg.values()) != 2 * (len(subset) - 1):
        return None
    centres = [v for v in subset if deg[v] >= 3]
    if len(positive) == 3:
        if len(centres) != 1 or deg[centres[0]] != 3:
            return None
        mid = centres[0]
        arms = []
        for start in iter_bits(g.adj[mid] & sub):
            arm, prev, cur = [start], mid, start
            while deg[cur] == 2:
                nxt = lowest(g.adj[cur] & sub & ~(1 << prev))
                arm.append(nxt)
                prev, cur = cur, nxt
            if deg[cur] != 1:
                return None
            arms.append(arm)
        if sum(map(len, arms)) != len(subset) - 1:
            return None
        if sorted(map(len, arms)) != positive:
            return None
        return _assign_legs(spec, mid, arms)
    if centres:
        return None
    ends = [v for v in subset if deg[v] <= 1]
    if len(subset) == 1:
        return PatternWitness(spec, subset[0], ((), (), ()))
    if len(ends) != 2:
        return None
    path, prev, cur = [ends[0]], -1, ends[0]
    while len(path) < len(subset):
        rest = g.adj[cur] & sub & ~(0 if prev < 0 else 1 << prev)
        if not rest:
            return None
        prev, cur = cur, lowest(rest)
        path.append(cur)
    if len(path) != len(subset):
        return None
    if len(positive) == 1:
        return _assign_legs(spec, path[0], [path[1:]])
    a = positive[0]
    return _assign_legs(spec, path[a], [path[a - 1 :: -1], path[a + 1 :]])


def _assign_legs(spec: PatternSpec, mid: int, arms: list[list[int]]) -> PatternWitness:
    pool = sorted(arms, key=len)
    out: list[tuple[int, ...]] = []
    for length in spec.legs:
        if length == 0:
            out.append(())
            continue
        for idx, arm in enumerate(pool):
            if len(arm) == length:
                out.append(tuple(pool.pop(idx)))
                break
    return PatternWitness(spec, mid, (out[0], out[1], out[2]))


@dataclass(frozen=True)
class ClassVerdict:
    """Outcome of the S_{1,3,3}-free bipartite membership test."""

    status: str  # "yes" | "no" | "not_bipartite"
    witness: Optional[PatternWitness] = None

    @property
    def member(self) -> bool:
        return self.status == "yes"


def is_s133_free_bipartite(g: Graph) -> ClassVerdict:
    if bipartition(g) is None:
        return ClassVerdict("not_bipartite")
    w = find_induced_sijk(g, S133)
    if w is not None:
        return ClassVerdict("no", w)
    return ClassVerdict("yes")


def transversal_reach(levels: DistanceLevels, g: Graph, target: int) -> list[int]:
    """``reach[i]``: vertices of N_i that start a path r_i, ..., r_target with r_t in N_t."""
    reach = [0] * (target + 1)
    reach[target] = levels.level(target)
    for i in range(target - 1, -1, -1):
        nxt = reach[i + 1]
        reach[i] = mask_of(v for v in iter_bits(levels.level(i)) if g.adj[v] & nxt)
    return reach


def anchored_r2_mask(levels: DistanceLevels, g: Graph) -> int:
    """r2 in N_2 with a level-transversal path to N_6 and a non-neighbour in N_1."""
    if levels.depth < 6:
        return 0
    reach = transversal_reach(levels, g, 6)
    n1 = levels.level(1)
    return mask_of(v for v in iter_bits(reach[2]) if n1 & ~g.adj[v])


def has_anchored_p8(levels: DistanceLevels, g: Graph) -> Optional[tuple[int, ...]]:
    """Find an induced P8 (s1, d, r1, ..., r6) with s1, r1 in N_1 and r_i in N_i.

    Returns the eight vertices in path order, or None.  In a bipartite layering
    every level-transversal path is induced, so only s1 r2 needs checking.
    """
    anchored = anchored_r2_mask(levels, g)
    if not anchored:
        return None
    reach = transversal_reach(levels, g, 6)
    r2 = lowest(anchored)
    n1 = levels.level(1)
    r1 = lowest(g.adj[r2] & n1)
    s1 = lowest(n1 & ~g.adj[r2])
    path = [r1, r2]
    for i in range(3, 7):
        path.append(lowest(g.adj[path[-1]] & reach[i]))
    return (s1, levels.root, *path)


def find_transversal_path(levels: DistanceLevels, g: Graph, target: int) -> Optional[tuple[int, ...]]:
    """Lowest-id path (r_1, ..., r_target) with r_i in N_i, or None."""
    if levels.depth < target:
        return None
    reach = transversal_reach(levels, g, target)
    path = [lowest(reach[1])]
    for i in range(2, target + 1):
        path.append(lowest(g.adj[path[-1]] & reach[i]))
    return tuple(path)
