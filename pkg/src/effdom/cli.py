"""``effdom`` command line: solve, verify, recognize, generate, oracle, crosscheck.

Reports are ``key: value`` lines on stdout.  Exit codes for ``solve``:
0 e.d.s. found, 1 none exists, 2 class violation or not bipartite,
3 input error, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .formats import ParseError, format_edge_list, read_graph, to_graph6
from .generate import GenerationError, generate, random_bipartite
from .graph import Graph, GraphError, component_masks
from .oracle import OracleRefused, count_eds, solve_exact, verify_eds
from .recognize import is_s133_free_bipartite
from .solver import SolveOptions, Verdict, solve, solve_with_root

EXIT_FOUND, EXIT_NONE, EXIT_CLASS, EXIT_INPUT, EXIT_GIVE_UP = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _load(path: str) -> tuple[Graph, tuple[int, ...]]:
    try:
        return read_graph(path)
    except (ParseError, GraphError) as exc:
        raise InputError(f"{path}: {exc}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _labels_out(vertices, labels: Sequence[int]) -> str:
    return " ".join(str(labels[v]) for v in sorted(vertices))


def _index_of(label: str, labels: Sequence[int]) -> int:
    try:
        return list(labels).index(int(label))
    except ValueError:
        raise InputError(f"unknown vertex label {label!r}") from None


def _emit(key: str, value) -> None:
    print(f"{key}: {value}")


def _witness_text(w, labels: Sequence[int]) -> str:
    legs = " / ".join(" ".join(str(labels[v]) for v in leg) for leg in w.legs)
    return f"midpoint={labels[w.midpoint]} legs={legs}"


# commands


def cmd_solve(args: argparse.Namespace) -> int:
    g, labels = _load(args.path)
    opts = SolveOptions(check_class=args.check_class, debug=args.debug)
    start = time.perf_counter()
    if args.root is not None:
        out = solve_with_root(g, _index_of(args.root, labels), opts)
    else:
        out = solve(g, opts)
    elapsed = (time.perf_counter() - start) * 1000
    _emit("verdict", out.verdict.value)
    if out.found:
        _emit("solution", _labels_out(out.solution, labels))
        _emit("size", len(out.solution))
    if out.witness is not None:
        _emit("witness", _witness_text(out.witness, labels))
    _emit("nodes", out.stats.nodes)
    _emit("fallback", out.stats.fallback_activations)
    if args.trace:
        for entry in out.trace:
            _emit("trace", entry)
    if args.timing:
        _emit("time_ms", f"{elapsed:.3f}")
    return {
        Verdict.FOUND: EXIT_FOUND,
        Verdict.NO_EDS: EXIT_NONE,
        Verdict.CLASS_VIOLATION: EXIT_CLASS,
        Verdict.NOT_BIPARTITE: EXIT_CLASS,
        Verdict.GIVE_UP: EXIT_GIVE_UP,
    }[out.verdict]


def cmd_verify(args: argparse.Namespace) -> int:
    g, labels = _load(args.path)
    tokens = [t for chunk in args.vertices for t in chunk.replace(",", " ").split()]
    members = {_index_of(t, labels) for t in tokens}
    check = verify_eds(g, members)
    _emit("eds", "yes" if check else "no")
    if check.uncovered:
        _emit("uncovered", _labels_out(check.uncovered, labels))
    if check.overcovered:
        over = " ".join(f"{labels[v]}x{k}" for v, k in sorted(check.overcovered.items()))
        _emit("overcovered", over)
    return EXIT_FOUND if check else EXIT_NONE


def cmd_recognize(args: argparse.Namespace) -> int:
    g, labels = _load(args.path)
    verdict = is_s133_free_bipartite(g)
    _emit("s133-free-bipartite", verdict.status)
    if verdict.witness is not None:
        _emit("witness", _witness_text(verdict.witness, labels))
    return EXIT_FOUND if verdict.member else EXIT_CLASS


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        params = [float(p) for p in args.params]
        gen = generate(args.kind, *params, seed=args.seed, max_attempts=args.max_attempts)
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONE
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad generator arguments: {exc}") from None
    if args.kind == "random_s133_free_bipartite":
        print(f"attempts: {gen.attempts}", file=sys.stderr)
    if args.format == "edges":
        sys.stdout.write(format_edge_list(gen.graph))
    else:
        print(to_graph6(gen.graph))
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    g, labels = _load(args.path)
    try:
        sol = solve_exact(g, mrv=args.mrv)
        _emit("verdict", "found" if sol is not None else "no_eds")
        if sol is not None:
            _emit("solution", _labels_out(sol, labels))
        if args.count:
            _emit("count", count_eds(g, mrv=args.mrv))
    except OracleRefused as exc:
        raise InputError(str(exc)) from None
    return EXIT_FOUND if sol is not None else EXIT_NONE


def _check_one(item: tuple[str, bool]) -> tuple[bool, int, bool, str]:
    """(agree, fallback activations, class member, graph6) for one instance."""
    from .formats import from_graph6

    g6, member = item
    g = from_graph6(g6)
    out = solve(g)
    exact = solve_exact(g, mrv=True)
    agree = out.found == (exact is not None) and out.verdict is not Verdict.GIVE_UP
    return agree, out.stats.fallback_activations, member, g6


def _crosscheck_instances(
    count: int, min_n: int, max_n: int, seed: int, include_non_class: bool
) -> list[tuple[str, bool]]:
    rng = random.Random(seed)
    out: list[tuple[str, bool]] = []
    while len(out) < count:
        n = rng.randint(min_n, max_n)
        left = rng.randint(1, max(1, n - 1)) if n > 1 else n
        g = random_bipartite(left, n - left, rng.uniform(0.1, 0.9), rng.getrandbits(64))
        if len(component_masks(g)) > 1:
            continue
        member = is_s133_free_bipartite(g).member
        if member or include_non_class:
            out.append((to_graph6(g), member))
    return out


def cmd_crosscheck(args: argparse.Namespace) -> int:
    if args.min_n < 1 or args.max_n < args.min_n:
        raise InputError("need 1 <= min-n <= max-n")
    items = _crosscheck_instances(args.count, args.min_n, args.max_n, args.seed, args.include_non_class)
    if args.jobs > 1 and items:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_check_one, items, chunksize=32))
    else:
        results = [_check_one(it) for it in items]
    agree = sum(r[0] for r in results)
    class_fallback = sum(r[1] for r in results if r[2])
    print(f"agree: {agree}/{len(results)}, fallback: {class_fallback}")
    if args.include_non_class:
        _emit("non_class", sum(1 for r in results if not r[2]))
        _emit("fallback_non_class", sum(r[1] for r in results if not r[2]))
    bad = [r[3] for r in results if not r[0]]
    for g6 in bad:
        _emit("counterexample", g6)
    return EXIT_FOUND if not bad and class_fallback == 0 else EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="effdom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find an efficient dominating set")
    p.add_argument("path")
    p.add_argument("--check-class", action="store_true", help="refuse inputs outside the class")
    p.add_argument("--root", help="vertex label that must be in the solution")
    p.add_argument("--trace", action="store_true", help="print the case trace")
    p.add_argument("--timing", action="store_true", help="print wall time in milliseconds")
    p.add_argument("--debug", action="store_true", help="run structural self-checks")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a candidate vertex set")
    p.add_argument("path")
    p.add_argument("vertices", nargs="+", help="labels, space or comma separated")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("recognize", help="test S_1,3,3-free bipartite membership")
    p.add_argument("path")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("generate", help="write a generated graph to stdout")
    p.add_argument(
        "kind", choices=["path", "cycle", "random_bipartite", "random_s133_free_bipartite"]
    )
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=10_000)
    p.add_argument("--format", choices=["graph6", "edges"], default="graph6")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", help="exact exponential-time solver")
    p.add_argument("path")
    p.add_argument("--count", action="store_true", help="also count all solutions")
    p.add_argument("--mrv", action="store_true", help="branch on the most constrained vertex")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("crosscheck", help="compare solver and oracle on random instances")
    p.add_argument("count", type=int)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--include-non-class", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
