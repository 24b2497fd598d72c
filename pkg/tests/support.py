"""Strategies and worked-example graph fixtures shared by the tests."""

from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from effdom.graph import Graph, build_graph

PROPERTY_SETTINGS = settings(
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@st.composite
def graphs(draw: st.DrawFn, min_n: int = 1, max_n: int = 9) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, edges)


@st.composite
def bipartite_graphs(draw: st.DrawFn, min_n: int = 1, max_n: int = 10) -> Graph:
    n = draw(st.integers(min_n, max_n))
    left = draw(st.integers(0, n))
    pairs = [(u, v) for u in range(left) for v in range(left, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, edges)


def labelled_path(*names: str) -> dict[str, int]:
    return {name: i for i, name in enumerate(names)}


def case21_gadget() -> tuple[Graph, dict[str, int]]:
    """N_1={u}, N_2={x1,x2}, N_3={y1,y2,y3}, N_4={z}; (u,x1,y3,x2) is a C_4."""
    ids = labelled_path("d", "u", "x1", "x2", "y1", "y2", "y3", "z")
    pairs = [("d", "u"), ("u", "x1"), ("u", "x2"), ("x1", "y3"), ("x2", "y3"),
             ("x1", "y1"), ("x2", "y2"), ("y3", "z")]
    return build_graph(len(ids), [(ids[a], ids[b]) for a, b in pairs]), ids


def c12_labelled() -> tuple[Graph, dict[str, int]]:
    """C_12 on (r6, ..., r1, d, s1, ..., s5) in cyclic order."""
    names = ["r6", "r5", "r4", "r3", "r2", "r1", "d", "s1", "s2", "s3", "s4", "s5"]
    ids = labelled_path(*names)
    return build_graph(12, [(i, (i + 1) % 12) for i in range(12)]), ids


def p13_labelled() -> tuple[Graph, dict[str, int]]:
    """P_13 on (r6, ..., r1, d, s1, ..., s6) in path order."""
    names = ["r6", "r5", "r4", "r3", "r2", "r1", "d", "s1", "s2", "s3", "s4", "s5", "s6"]
    ids = labelled_path(*names)
    return build_graph(13, [(i, i + 1) for i in range(12)]), ids


def s133_planted() -> Graph:
    """An S_1,3,3 (midpoint 0) plus an isolated vertex 8."""
    return build_graph(9, [(0, 1), (0, 2), (2, 3), (3, 4), (0, 5), (5, 6), (6, 7)])


# acceptance criterion number -> one-line report, printed in the terminal summary
ACCEPTANCE: dict[int, str] = {}
