"""Ground truth for efficient domination: verifier and exact-cover search.

An e.d.s. is a choice of closed neighbourhoods N[u] that partition the vertex
set, so the exact solver is a plain exact-cover search: take an uncovered
vertex, try each vertex whose closed neighbourhood covers it without
overlapping what is already covered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .bits import iter_bits, mask_of, to_set
from .graph import Graph

DEFAULT_MAX_N = 64
ENUMERATE_MAX_N = 20


class OracleRefused(ValueError):
    """The instance exceeds the oracle's size guard."""


@dataclass(frozen=True)
class EdsCheck:
    """Verification result; truthy iff the set is an e.d.s."""

    ok: bool
    uncovered: frozenset[int] = frozenset()
    overcovered: dict[int, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def verify_eds(g: Graph, D: Iterable[int]) -> EdsCheck:
    """Check |N[v] & D| == 1 for every vertex, reporting the violators."""
    members = mask_of(D)
    if members >> g.n:
        raise ValueError("solution mentions vertices outside the graph")
    uncovered, over = [], {}
    for v in range(g.n):
        hits = (g.closed[v] & members).bit_count()
        if hits == 0:
            uncovered.append(v)
        elif hits > 1:
            over[v] = hits
    return EdsCheck(not uncovered and not over, frozenset(uncovered), over)


def _covers(g: Graph, alive: int, forbidden: int, covered: int, mrv: bool) -> Iterator[int]:
    """Yield every completion (as a bitset of chosen vertices) of a partial cover."""
    closed = g.closed
    uncovered = alive & ~covered
    if not uncovered:
        yield 0
        return
    if mrv:
        best, best_cands = -1, -1
        for v in iter_bits(uncovered):
            cands = _candidates(closed, v, alive, forbidden, covered)
            if best < 0 or cands.bit_count() < best_cands.bit_count():
                best, best_cands = v, cands
                if not cands:
                    return
        cands = best_cands
    else:
        v = (uncovered & -uncovered).bit_length() - 1
        cands = _candidates(closed, v, alive, forbidden, covered)
    for u in iter_bits(cands):
        for rest in _covers(g, alive, forbidden, covered | (closed[u] & alive), mrv):
            yield rest | 1 << u


def _candidates(closed: tuple[int, ...], v: int, alive: int, forbidden: int, covered: int) -> int:
    out = 0
    for u in iter_bits(closed[v] & alive & ~forbidden):
        if not closed[u] & alive & covered:
            out |= 1 << u
    return out


def _start(
    g: Graph,
    excluded: Iterable[int],
    forced: Iterable[int],
    within: Optional[Iterable[int]],
    max_n: int,
) -> Optional[tuple[int, int, int, int]]:
    alive = g.all_mask if within is None else mask_of(within)
    size = alive.bit_count()
    if size > max_n:
        raise OracleRefused(f"instance has {size} vertices, oracle limit is {max_n}")
    forbidden = mask_of(excluded) & alive
    must = mask_of(forced) & alive
    covered = 0
    for u in iter_bits(must):
        nb = g.closed[u] & alive
        if nb & covered or forbidden >> u & 1:
            return None
        covered |= nb
    return alive, forbidden, covered, must


def iter_eds(
    g: Graph,
    *,
    excluded: Iterable[int] = (),
    forced: Iterable[int] = (),
    within: Optional[Iterable[int]] = None,
    max_n: int = DEFAULT_MAX_N,
    mrv: bool = False,
) -> Iterator[frozenset[int]]:
    """Every e.d.s. of ``g[within]`` containing ``forced`` and avoiding ``excluded``."""
    start = _start(g, excluded, forced, within, max_n)
    if start is None:
        return
    alive, forbidden, covered, must = start
    for chosen in _covers(g, alive, forbidden, covered, mrv):
        yield to_set(chosen | must)


def solve_exact(g: Graph, **kwargs) -> Optional[frozenset[int]]:
    """First e.d.s. in search order (lowest uncovered vertex, ascending candidates)."""
    return next(iter_eds(g, **kwargs), None)


def count_eds(g: Graph, **kwargs) -> int:
    return sum(1 for _ in iter_eds(g, **kwargs))


def enumerate_eds(g: Graph, max_n: int = ENUMERATE_MAX_N, **kwargs) -> list[frozenset[int]]:
    return list(iter_eds(g, max_n=max_n, **kwargs))
