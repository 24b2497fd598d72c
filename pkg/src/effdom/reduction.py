"""Forced/excluded bookkeeping, unit propagation and neighbourhood reduction.

A vertex is *forced* once it is assumed to be in the dominating set D and
*excluded* once it provably is not.  Assuming ``v`` dominates N[v] and excludes
everything within distance two of ``v``.  Propagation then repeatedly looks at
undominated vertices: no remaining candidate dominator is a contradiction, a
single one is forced.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .bits import iter_bits, lowest, mask_of, to_set
from .graph import Graph, component_masks


class Status(enum.IntEnum):
    UNDECIDED = 0
    FORCED = 1
    EXCLUDED = 2


@dataclass(frozen=True)
class PropagationOutcome:
    kind: str  # "progress" | "fixpoint" | "contradiction"
    count: int = 0
    vertex: Optional[int] = None
    reason: str = ""

    @property
    def contradiction(self) -> bool:
        return self.kind == "contradiction"

    @classmethod
    def progress(cls, count: int) -> "PropagationOutcome":
        return cls("progress", count) if count else cls("fixpoint")

    @classmethod
    def conflict(cls, vertex: int, reason: str) -> "PropagationOutcome":
        return cls("contradiction", vertex=vertex, reason=reason)


FIXPOINT = PropagationOutcome("fixpoint")


class EdsState:
    """Decision state over the vertices ``alive`` of a host graph.

    All mutations are logged on ``trail``; ``undo(mark)`` rolls back to an
    earlier ``mark()``.
    """

    def __init__(self, graph: Graph, alive: Optional[int] = None) -> None:
        self.graph = graph
        self.alive = graph.all_mask if alive is None else alive
        self.forced = 0
        self.excluded = 0
        self.dominated = 0
        self.dominated_by: list[Optional[int]] = [None] * graph.n
        self.trail: list[tuple[int, int, int, tuple[int, ...]]] = []

    # queries

    def status(self, v: int) -> Status:
        if self.forced >> v & 1:
            return Status.FORCED
        if self.excluded >> v & 1:
            return Status.EXCLUDED
        return Status.UNDECIDED

    def candidates(self, v: int) -> int:
        """Vertices that could still dominate ``v``."""
        return self.graph.closed[v] & self.alive & ~self.excluded

    @property
    def undominated(self) -> int:
        return self.alive & ~self.dominated

    @property
    def settled(self) -> bool:
        return not self.undominated

    @property
    def solution(self) -> frozenset[int]:
        return to_set(self.forced)

    def snapshot(self) -> tuple:
        return (self.alive, self.forced, self.excluded, self.dominated, tuple(self.dominated_by))

    # trail

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            forced, excluded, dominated, touched = self.trail.pop()
            self.forced, self.excluded, self.dominated = forced, excluded, dominated
            for v in touched:
                self.dominated_by[v] = None

    def _push(self, touched: tuple[int, ...] = ()) -> None:
        self.trail.append((self.forced, self.excluded, self.dominated, touched))

    # decisions

    def assume_in_d(self, v: int) -> PropagationOutcome:
        """Put ``v`` into D: dominate N[v], exclude every vertex within distance 2."""
        if not self.alive >> v & 1:
            raise ValueError(f"vertex {v} is not part of this instance")
        if self.forced >> v & 1:
            return FIXPOINT
        if self.excluded >> v & 1:
            return PropagationOutcome.conflict(v, "assumed vertex is excluded")
        g = self.graph
        nb = g.closed[v] & self.alive
        clash = nb & self.dominated
        if clash:
            return PropagationOutcome.conflict(lowest(clash), f"dominated twice once {v} is in D")
        touched = tuple(iter_bits(nb))
        self._push(touched)
        self.forced |= 1 << v
        self.excluded |= g.ball2[v] & self.alive & ~(1 << v)
        self.dominated |= nb
        for w in touched:
            self.dominated_by[w] = v
        return PropagationOutcome.progress(1)

    def exclude(self, vertices: int | Iterable[int]) -> PropagationOutcome:
        mask = vertices if isinstance(vertices, int) else mask_of(vertices)
        mask &= self.alive
        hit = mask & self.forced
        if hit:
            return PropagationOutcome.conflict(lowest(hit), "excluding a forced vertex")
        fresh = mask & ~self.excluded
        if not fresh:
            return FIXPOINT
        self._push()
        self.excluded |= fresh
        return PropagationOutcome.progress(fresh.bit_count())

    def propagate(self, rng: Optional[random.Random] = None) -> PropagationOutcome:
        """Unit propagation to fixpoint.

        Undominated vertices are examined lowest id first (or in random order
        when ``rng`` is given); a vertex is re-queued whenever one of its
        closed neighbours becomes excluded.
        """
        closed = self.graph.closed
        pending = self.undominated
        forced_count = 0
        while pending:
            if rng is None:
                low = pending & -pending
            else:
                low = 1 << rng.choice(list(iter_bits(pending)))
            pending ^= low
            if self.dominated & low:
                continue
            v = low.bit_length() - 1
            cands = closed[v] & self.alive & ~self.excluded
            if not cands:
                return PropagationOutcome.conflict(v, "no candidate dominator left")
            if cands & (cands - 1):
                continue
            before = self.excluded
            out = self.assume_in_d(cands.bit_length() - 1)
            if out.contradiction:
                return out
            forced_count += 1
            for e in iter_bits(self.excluded & ~before):
                pending |= closed[e]
            pending &= self.undominated
        return PropagationOutcome.progress(forced_count)


def init_root(g: Graph, d: int, alive: Optional[int] = None) -> EdsState:
    """Fresh state with ``d`` forced (so N_1 and N_2 of ``d`` are excluded)."""
    state = EdsState(g, alive)
    out = state.assume_in_d(d)
    assert not out.contradiction
    return state


def state_from(
    g: Graph, alive: int, excluded: int = 0, forced: int = 0
) -> tuple[EdsState, PropagationOutcome]:
    """Rebuild a state from carried exclusions and forced vertices."""
    state = EdsState(g, alive)
    out = state.exclude(excluded)
    if out.contradiction:
        return state, out
    for v in iter_bits(forced):
        out = state.assume_in_d(v)
        if out.contradiction:
            return state, out
    return state, FIXPOINT


@dataclass(frozen=True)
class Reduction:
    """``host`` minus the closed neighbourhoods of ``fragment``.

    ``excluded`` and ``forced`` are carried over to the remaining vertices; an
    e.d.s. of the remainder respecting them plus ``fragment`` is an e.d.s. of
    the original instance and vice versa.
    """

    host: Graph
    alive: int
    excluded: int
    forced: int
    fragment: frozenset[int]
    removed: int

    @property
    def carried_exclusions(self) -> frozenset[int]:
        return to_set(self.excluded)

    @property
    def carried_forced(self) -> frozenset[int]:
        return to_set(self.forced)

    @property
    def vertices(self) -> frozenset[int]:
        return to_set(self.alive)

    def component_masks(self) -> list[int]:
        return component_masks(self.host, self.alive)

    def graph(self) -> tuple[Graph, tuple[int, ...]]:
        """The remaining graph relabelled densely, with the host ids."""
        return self.host.induced(iter_bits(self.alive))


def reduce_graph(state: EdsState, pivots: Optional[Iterable[int]] = None) -> Reduction:
    """Remove N[u] for each forced pivot (default: all forced vertices)."""
    g = state.graph
    pivot_mask = state.forced if pivots is None else mask_of(pivots)
    if pivot_mask & ~state.forced:
        raise ValueError("reduce_graph pivots must be forced")
    removed = 0
    for u in iter_bits(pivot_mask):
        removed |= g.closed[u]
    removed &= state.alive
    alive = state.alive & ~removed
    return Reduction(
        host=g,
        alive=alive,
        excluded=state.excluded & alive,
        forced=state.forced & alive,
        fragment=to_set(pivot_mask),
        removed=removed,
    )
