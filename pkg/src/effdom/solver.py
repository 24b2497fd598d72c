"""Polynomial-time e.d.s. solver for S_{1,3,3}-free bipartite graphs.

The search assumes a vertex ``d`` of the dominating set D and looks at the BFS
distance levels N_1, N_2, ... of ``d``.  What happens next depends on the depth
of the layering:

* N_4 empty: unit propagation decides everything.
* N_5 or N_6 empty: enumerate the few D-vertices of N_3 and N_4 that touch the
  next level (at most two resp. one of them on class members).
* N_6 nonempty with an anchored P_8: force r_3, fix the N_3 support, delete
  N[d] and recurse on what is left.
* N_6 nonempty without it: either branch on r_3 / r_4 of a long transversal
  path and recurse, or sweep the levels with width one per level.

Every pruning rule above is only valid on class members.  When a pruned search
comes back empty on an input that is not known to be in the class, the solver
re-runs that node with a plain branching search (the fallback), so answers are
exact on every input.
"""

from __future__ import annotations

import enum
import logging
import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from .bits import iter_bits, lowest, to_set
from .graph import DistanceLevels, Graph, component_masks, distance_levels
from .oracle import verify_eds
from .recognize import (
    S133,
    PatternWitness,
    anchored_r2_mask,
    find_transversal_path,
    has_anchored_p8,
    is_s133_free_bipartite,
    verify_witness,
)
from .reduction import EdsState, reduce_graph, state_from

log = logging.getLogger(__name__)

DEFAULT_FALLBACK_BUDGET = 200_000


@dataclass(frozen=True)
class CaseTag:
    label: str
    sub: Optional[str] = None

    def __str__(self) -> str:
        return f"{self.label}({self.sub})" if self.sub else self.label


N4_EMPTY = CaseTag("N4_EMPTY")
N6_EMPTY = CaseTag("N6_EMPTY")
REDUCE = "REDUCE"
FALLBACK = "FALLBACK"
GIVE_UP = "GIVE_UP"


@dataclass(frozen=True)
class TraceEntry:
    depth: int
    root: Optional[int]
    case: str
    decision: str = ""
    removed: frozenset[int] = frozenset()
    components: tuple[frozenset[int], ...] = ()

    def __str__(self) -> str:
        parts = [f"depth={self.depth}", f"root={self.root}", f"case={self.case}"]
        if self.decision:
            parts.append(f"decision={self.decision}")
        if self.removed:
            parts.append(f"removed={sorted(self.removed)}")
        if self.components:
            parts.append("components=" + "|".join(str(sorted(c)) for c in self.components))
        return " ".join(parts)


class Verdict(enum.Enum):
    FOUND = "found"
    NO_EDS = "no_eds"
    CLASS_VIOLATION = "class_violation"
    NOT_BIPARTITE = "not_bipartite"
    GIVE_UP = "give_up"


@dataclass
class SolveStats:
    nodes: int = 0
    fallback_activations: int = 0
    fallback_nodes: int = 0
    max_depth: int = 0
    roots_tried: int = 0


@dataclass(frozen=True)
class SolveOutcome:
    verdict: Verdict
    solution: Optional[frozenset[int]] = None
    witness: Optional[PatternWitness] = None
    trace: tuple[TraceEntry, ...] = ()
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND

    def cases(self) -> list[str]:
        return [e.case for e in self.trace]


@dataclass(frozen=True)
class SolveOptions:
    """``check_class`` runs the recognizer up front and refuses non-members.
    ``assume_class`` trusts the caller that the input is a member, which
    disables the lazy membership test behind the fallback guard."""

    check_class: bool = False
    assume_class: bool = False
    debug: bool = False
    fallback_budget: int = DEFAULT_FALLBACK_BUDGET
    record_trace: bool = True


class _GiveUp(Exception):
    pass


class _ClassViolation(Exception):
    def __init__(self, witness: PatternWitness) -> None:
        super().__init__("input contains an induced S_1,3,3")
        self.witness = witness


Leaf = Callable[[EdsState], Optional[int]]


class _Search:
    def __init__(self, g: Graph, opts: SolveOptions, trusted: Optional[bool] = None) -> None:
        self.g = g
        self.opts = opts
        self.stats = SolveStats()
        self.trace: list[TraceEntry] = []
        self._trusted = True if opts.assume_class else trusted

    # bookkeeping

    def note(self, depth: int, root: Optional[int], case, decision: str = "", **kw) -> None:
        if self.opts.record_trace:
            self.trace.append(TraceEntry(depth, root, str(case), decision, **kw))

    def trusted(self) -> bool:
        if self._trusted is None:
            self._trusted = is_s133_free_bipartite(self.g).member
        return self._trusted

    # instances

    def solve_instance(
        self,
        alive: int,
        excluded: int = 0,
        forced: int = 0,
        depth: int = 0,
        prefer: Optional[DistanceLevels] = None,
    ) -> Optional[int]:
        """Solution mask for ``g[alive]`` containing ``forced``, avoiding ``excluded``."""
        self.stats.max_depth = max(self.stats.max_depth, depth)
        state, out = state_from(self.g, alive, excluded, forced)
        if out.contradiction or state.propagate().contradiction:
            return None
        result = state.forced
        for comp in component_masks(self.g, alive):
            if not comp & ~state.dominated:
                continue
            sub = self.solve_component(
                comp, state.excluded & comp, state.forced & comp, depth, prefer
            )
            if sub is None:
                return None
            result |= sub
        return result

    def solve_component(
        self, comp: int, excluded: int, forced: int, depth: int, prefer: Optional[DistanceLevels]
    ) -> Optional[int]:
        if forced:
            return self.rooted(comp, excluded, forced, _preferred(forced, prefer), depth)
        closed = self.g.closed
        if excluded:
            v0 = min(
                iter_bits(comp), key=lambda v: ((closed[v] & comp & ~excluded).bit_count(), v)
            )
        else:
            v0 = lowest(comp)
        for d in iter_bits(closed[v0] & comp & ~excluded):
            sol = self.rooted(comp, excluded, forced, d, depth)
            if sol is not None:
                return sol
        return None

    def rooted(self, comp: int, excluded: int, forced: int, d: int, depth: int) -> Optional[int]:
        """Search for a solution of the component containing ``d``."""
        g = self.g
        self.stats.nodes += 1
        self.stats.roots_tried += 1
        state, out = state_from(g, comp, excluded, forced | 1 << d)
        if not out.contradiction:
            out = state.propagate()
        if out.contradiction:
            self.note(depth, d, "CONTRADICTION", f"vertex {out.vertex}: {out.reason}")
            return None
        levels = distance_levels(g, d, within=comp)
        self._debug_check(state, levels)
        k = levels.depth
        if k <= 3:
            tag, handler = N4_EMPTY, self._settle
        elif k == 4:
            tag, handler = CaseTag("N5_EMPTY", _n5_subcase(state, levels)), self._shallow
        elif k == 5:
            tag, handler = N6_EMPTY, self._shallow
        elif has_anchored_p8(levels, g) is not None:
            tag, handler = CaseTag("P8_CASE"), self._p8_case
        elif k >= 10:
            tag, handler = CaseTag("NO_P8", "N10_NONEMPTY"), self._n10_case
        else:
            sub = {9: "N9_TERMINAL", 8: "N8_TERMINAL", 7: "N7_TERMINAL", 6: "N7_EMPTY"}[k]
            tag, handler = CaseTag("NO_P8", sub), self._no_p8_terminal
        entry = state.mark()
        sol = handler(state, levels, depth, tag)
        if sol is not None:
            return sol
        if self.opts.assume_class or self.trusted():
            return None
        # the pruning rules may have cut a real solution on a non-member
        state.undo(entry)
        return self.fallback(state, depth, d, "handler exhausted on an uncertified instance")

    # handlers

    def _settle(self, state: EdsState, levels: DistanceLevels, depth: int, tag) -> Optional[int]:
        self.note(depth, levels.root, tag, "propagation")
        return self._finish(state, levels, depth)

    def _shallow(self, state: EdsState, levels: DistanceLevels, depth: int, tag) -> Optional[int]:
        plan = [(3, None)] if levels.depth == 4 else [(4, 1), (3, None)]
        self.note(depth, levels.root, tag, "support " + _plan_text(plan))
        return self._sweep(state, levels, plan, depth, lambda s: self._finish(s, levels, depth))

    def _p8_case(self, state: EdsState, levels: DistanceLevels, depth: int, tag) -> Optional[int]:
        g, d = self.g, levels.root
        n3 = levels.level(3)
        forced_r3 = []
        for r2 in iter_bits(anchored_r2_mask(levels, g)):
            up = g.adj[r2] & n3
            if up & (up - 1):
                # two N_3 neighbours of an anchored r_2 force an S_1,3,3
                self.note(depth, d, tag, f"r2={r2} has several N3 neighbours")
                return None
            r3 = lowest(up)
            if state.assume_in_d(r3).contradiction:
                self.note(depth, d, tag, f"forcing r3={r3} contradicts")
                return None
            forced_r3.append(r3)
        if state.propagate().contradiction:
            self.note(depth, d, tag, "propagation after forcing r3 contradicts")
            return None
        path = has_anchored_p8(levels, g)
        r3 = path[4]
        n2, n4 = levels.level(2), levels.level(4)
        lonely = [y for y in iter_bits(state.forced & n3) if not g.adj[y] & n4]
        if lonely:
            sub, width = "A", 1
        elif n2 & ~g.adj[r3] == 0:
            sub, width = "B.1", 2
        else:
            sub, width = "B.2", 2
        tag = CaseTag("P8_CASE", sub)
        self.note(depth, d, tag, f"forced r3={sorted(set(forced_r3))}")
        return self._sweep(
            state, levels, [(3, width)], depth, lambda s: self._reduce(s, levels, depth)
        )

    def _n10_case(self, state: EdsState, levels: DistanceLevels, depth: int, tag) -> Optional[int]:
        path = find_transversal_path(levels, self.g, 10)
        r3, r4 = path[2], path[3]
        for label, excl, pick in (("r4", 0, r4), ("r3", 1 << r4, r3)):
            mark = state.mark()
            self.stats.nodes += 1
            self.note(depth, levels.root, tag, f"branch {label}={pick}")
            ok = not state.exclude(excl).contradiction
            ok = ok and not state.assume_in_d(pick).contradiction
            ok = ok and not state.propagate().contradiction
            if ok:
                sol = self._sweep(
                    state, levels, [(3, 1)], depth, lambda s: self._reduce(s, levels, depth)
                )
                if sol is not None:
                    return sol
            state.undo(mark)
        return None

    def _no_p8_terminal(
        self, state: EdsState, levels: DistanceLevels, depth: int, tag
    ) -> Optional[int]:
        g, k = self.g, levels.depth
        banned = _touching(g, levels, 5)
        if k == 9:
            banned |= _touching(g, levels, 8)
        self.note(depth, levels.root, tag, f"exclude {sorted(to_set(banned))}")
        if state.exclude(banned).contradiction or state.propagate().contradiction:
            return None
        widths = {3: 1, 4: 1, 5: 0, 6: 1, 7: 1, 8: 0}
        plan = [(i, widths[i]) for i in range(3, k)]
        return self._sweep(state, levels, plan, depth, lambda s: self._finish(s, levels, depth))

    # shared steps

    def _sweep(
        self,
        state: EdsState,
        levels: DistanceLevels,
        plan: list[tuple[int, Optional[int]]],
        depth: int,
        leaf: Leaf,
        idx: int = 0,
    ) -> Optional[int]:
        """Fix the support of each planned level in turn, then call ``leaf``.

        The support of N_i is the set of D-vertices of N_i with a neighbour in
        N_{i+1}; candidate supports are tried by size, then lexicographically.
        """
        if idx == len(plan):
            return leaf(state)
        g = self.g
        i, width = plan[idx]
        if width is None:
            width = _n3_width(g, state, levels)
        nxt = levels.level(i + 1)
        pool = 0
        for v in iter_bits(levels.level(i) & ~state.excluded):
            if g.adj[v] & nxt:
                pool |= 1 << v
        taken = (pool & state.forced).bit_count()
        free = sorted(iter_bits(pool & ~state.forced))
        for size in range(0, width - taken + 1):
            for subset in combinations(free, size):
                mark = state.mark()
                self.stats.nodes += 1
                ok = True
                for v in subset:
                    if state.assume_in_d(v).contradiction:
                        ok = False
                        break
                if ok:
                    rest = pool & ~state.forced
                    ok = not state.exclude(rest).contradiction
                    ok = ok and not state.propagate().contradiction
                if ok:
                    sol = self._sweep(state, levels, plan, depth, leaf, idx + 1)
                    if sol is not None:
                        return sol
                state.undo(mark)
        return None

    def _finish(self, state: EdsState, levels: DistanceLevels, depth: int) -> Optional[int]:
        self._debug_check(state, levels)
        if state.settled:
            return state.forced
        return self.fallback(state, depth, levels.root, "levels swept but state unsettled")

    def _reduce(self, state: EdsState, levels: DistanceLevels, depth: int) -> Optional[int]:
        self._debug_check(state, levels)
        d = levels.root
        red = reduce_graph(state, [d])
        comps = red.component_masks()
        self.note(
            depth,
            d,
            REDUCE,
            f"forced {sorted(red.carried_forced)}",
            removed=to_set(red.removed),
            components=tuple(to_set(c) for c in comps),
        )
        sub = self.solve_instance(red.alive, red.excluded, red.forced, depth + 1, levels)
        if sub is None:
            return None
        return sub | (state.forced & red.removed)

    # fallback

    def fallback(self, state: EdsState, depth: int, root: Optional[int], why: str) -> Optional[int]:
        self.stats.fallback_activations += 1
        log.info("fallback at depth %d (root %s): %s", depth, root, why)
        self.note(depth, root, FALLBACK, why)
        try:
            return fallback_branch(state, self.opts.fallback_budget, self.stats)
        except _GiveUp:
            self.note(depth, root, GIVE_UP, f"budget {self.opts.fallback_budget} exhausted")
            raise

    # debug assertions

    def _debug_check(self, state: EdsState, levels: DistanceLevels) -> None:
        if not self.opts.debug:
            return
        w = same_level_violation(self.g, state, levels)
        if w is not None:
            raise _ClassViolation(w)


def fallback_branch(state: EdsState, budget: int, stats: Optional[SolveStats] = None) -> Optional[int]:
    """Plain branching on the undominated vertex with fewest candidates.

    Returns the solution mask, None when no completion exists, and raises
    ``_GiveUp`` once more than ``budget`` branch nodes were needed.
    """
    used = [0]
    closed = state.graph.closed

    def go() -> Optional[int]:
        if state.settled:
            return state.forced
        if used[0] >= budget:
            raise _GiveUp()
        best, best_c = -1, None
        for v in iter_bits(state.undominated):
            c = closed[v] & state.alive & ~state.excluded
            if best_c is None or c.bit_count() < best_c.bit_count():
                best, best_c = v, c
        for u in iter_bits(best_c):
            used[0] += 1
            if stats is not None:
                stats.fallback_nodes += 1
            if used[0] > budget:
                raise _GiveUp()
            mark = state.mark()
            if not state.assume_in_d(u).contradiction and not state.propagate().contradiction:
                sol = go()
                if sol is not None:
                    return sol
            state.undo(mark)
        return None

    return go()


def same_level_violation(g: Graph, state: EdsState, levels: DistanceLevels) -> Optional[PatternWitness]:
    """Look for two forced vertices of one level whose 2P_3 breaks the
    common-neighbour rules; such a pair yields an induced S_1,3,3."""
    for i in range(1, levels.depth - 1):
        for v1, v2 in combinations(list(iter_bits(state.forced & levels.level(i + 1))), 2):
            w = _pair_witness(g, state, levels, i, v1, v2)
            if w is not None:
                return w
    return None


def _pair_witness(
    g: Graph, state: EdsState, levels: DistanceLevels, i: int, v1: int, v2: int
) -> Optional[PatternWitness]:
    # v1, v2 in N_{i+1}; u_j in N_i and w_j in N_{i+2} are their neighbours
    adj = g.adj
    below, above = levels.level(i), levels.level(i + 2)
    for u1 in iter_bits(adj[v1] & below):
        for u2 in iter_bits(adj[v2] & below):
            for w1 in iter_bits(adj[v1] & above):
                for w2 in iter_bits(adj[v2] & above):
                    if i >= 2:
                        for r in iter_bits(adj[u1] & adj[u2] & levels.level(i - 1)):
                            s = lowest(adj[r] & levels.level(i - 2))
                            cand = PatternWitness(S133, r, ((s,), (u1, v1, w1), (u2, v2, w2)))
                            if verify_witness(g, cand):
                                return cand
                    for r in iter_bits(adj[w1] & adj[w2] & levels.level(i + 3)):
                        s = state.dominated_by[r]
                        if s is None or s == r:
                            continue
                        cand = PatternWitness(S133, r, ((s,), (w1, v1, u1), (w2, v2, u2)))
                        if verify_witness(g, cand):
                            return cand
    return None


def _preferred(forced: int, prefer: Optional[DistanceLevels]) -> int:
    if prefer is None:
        return lowest(forced)
    dist = prefer.distance
    return min(iter_bits(forced), key=lambda v: (dist.get(v, 1 << 30), v))


def _touching(g: Graph, levels: DistanceLevels, i: int) -> int:
    nxt = levels.level(i + 1)
    out = 0
    for v in iter_bits(levels.level(i)):
        if g.adj[v] & nxt:
            out |= 1 << v
    return out


def _n3_width(g: Graph, state: EdsState, levels: DistanceLevels) -> int:
    # one N_3 D-vertex without N_4 contact caps the touching ones at one
    n4 = levels.level(4)
    for y in iter_bits(state.forced & levels.level(3)):
        if not g.adj[y] & n4:
            return 1
    return 2


def _n5_subcase(state: EdsState, levels: DistanceLevels) -> str:
    g = state.graph
    d3 = state.forced & levels.level(3)
    if not d3:
        return "1"
    covered = 0
    for y in iter_bits(d3):
        covered |= g.adj[y]
    if not levels.level(2) & ~covered:
        return "2.1"
    n4 = levels.level(4)
    if any(not g.adj[y] & n4 for y in iter_bits(d3)):
        return "2.2.1"
    return "2.2.2"


def _plan_text(plan: list[tuple[int, Optional[int]]]) -> str:
    return ",".join(f"N{i}<={'auto' if w is None else w}" for i, w in plan)


def _outcome(search: _Search, verdict: Verdict, sol: Optional[int] = None, witness=None) -> SolveOutcome:
    return SolveOutcome(
        verdict,
        None if sol is None else to_set(sol),
        witness,
        tuple(search.trace),
        search.stats,
    )


def _run(g: Graph, opts: Optional[SolveOptions], body: Callable[[_Search], Optional[int]]) -> SolveOutcome:
    opts = opts or SolveOptions()
    trusted = None
    if opts.check_class:
        verdict = is_s133_free_bipartite(g)
        if verdict.status == "not_bipartite":
            return SolveOutcome(Verdict.NOT_BIPARTITE)
        if verdict.status == "no":
            return SolveOutcome(Verdict.CLASS_VIOLATION, witness=verdict.witness)
        trusted = True
    search = _Search(g, opts, trusted)
    # a reduction level costs a handful of frames; deep sparse inputs need headroom
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 40 * g.n + 1000))
    try:
        sol = body(search)
    except _GiveUp:
        return _outcome(search, Verdict.GIVE_UP)
    except _ClassViolation as exc:
        return _outcome(search, Verdict.CLASS_VIOLATION, witness=exc.witness)
    if sol is None:
        return _outcome(search, Verdict.NO_EDS)
    check = verify_eds(g, to_set(sol))
    if not check:
        raise AssertionError(f"solver produced an invalid e.d.s.: {check}")
    return _outcome(search, Verdict.FOUND, sol)


def solve(g: Graph, opts: Optional[SolveOptions] = None) -> SolveOutcome:
    """Decide whether ``g`` has an e.d.s. and return one if so."""
    return _run(g, opts, lambda s: s.solve_instance(g.all_mask))


def solve_with_root(g: Graph, d: int, opts: Optional[SolveOptions] = None) -> SolveOutcome:
    """Like ``solve`` but the component of ``d`` must use ``d`` as a D-vertex."""
    if not 0 <= d < g.n:
        raise ValueError(f"root {d} outside 0..{g.n - 1}")

    def body(s: _Search) -> Optional[int]:
        comp = next(c for c in component_masks(g) if c >> d & 1)
        own = s.rooted(comp, 0, 0, d, 0)
        if own is None:
            return None
        rest = s.solve_instance(g.all_mask & ~comp)
        return None if rest is None else own | rest

    return _run(g, opts, body)
