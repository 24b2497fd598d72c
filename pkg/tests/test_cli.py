from __future__ import annotations

import pytest

from effdom.cli import main
from effdom.formats import format_edge_list, to_graph6
from effdom.generate import cycle_graph, path_graph

from .support import s133_planted


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def fields(out):
    return dict(line.split(": ", 1) for line in out.splitlines() if ": " in line)


def test_solve_p10(capsys, write):
    code, out, _ = run(capsys, "solve", write("p10.txt", format_edge_list(path_graph(10))))
    assert code == 0
    assert fields(out)["solution"] == "0 3 6 9"
    assert fields(out)["size"] == "4"
    assert "time_ms" not in out


def test_solve_c8(capsys, write):
    code, out, _ = run(capsys, "solve", write("c8.g6", to_graph6(cycle_graph(8))))
    assert code == 1 and fields(out)["verdict"] == "no_eds"


def test_solve_dangling_edge(capsys, write):
    code, _, err = run(capsys, "solve", write("bad.txt", "3 2\n0 1\n1 3\n"))
    assert code == 3 and "line 3" in err


def test_solve_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "solve", str(tmp_path / "nope.txt"))
    assert code == 3 and "error" in err


def test_solve_class_gate(capsys, write):
    code, out, _ = run(capsys, "solve", "--check-class", write("c5.g6", to_graph6(cycle_graph(5))))
    assert code == 2 and fields(out)["verdict"] == "not_bipartite"
    code, out, _ = run(capsys, "solve", "--check-class", write("s.g6", to_graph6(s133_planted())))
    assert code == 2 and "witness" in fields(out)


def test_solve_root_trace_timing(capsys, write):
    path = write("c12.txt", format_edge_list(cycle_graph(12)))
    code, out, _ = run(capsys, "solve", path, "--root", "6", "--trace", "--timing")
    assert code == 0
    assert fields(out)["solution"] == "0 3 6 9"
    traces = [line for line in out.splitlines() if line.startswith("trace: ")]
    assert "case=P8_CASE(B.2)" in traces[0] and "case=REDUCE" in traces[1]
    assert float(fields(out)["time_ms"]) >= 0


def test_solve_output_stable(capsys, write):
    path = write("c12.txt", format_edge_list(cycle_graph(12)))
    first = run(capsys, "solve", path, "--trace")
    assert run(capsys, "solve", path, "--trace") == first


def test_verify(capsys, write):
    path = write("c6.txt", format_edge_list(cycle_graph(6)))
    assert run(capsys, "verify", path, "0", "3")[0] == 0
    code, out, _ = run(capsys, "verify", path, "0,2")
    assert code == 1 and fields(out)["overcovered"] == "1x2"
    assert run(capsys, "verify", path, "17")[0] == 3


def test_recognize(capsys, write):
    code, out, _ = run(capsys, "recognize", write("c12.g6", to_graph6(cycle_graph(12))))
    assert code == 0 and "s133-free-bipartite: yes" in out
    code, out, _ = run(capsys, "recognize", write("s.g6", to_graph6(s133_planted())))
    assert code == 2 and fields(out)["s133-free-bipartite"] == "no"
    assert fields(out)["witness"].startswith("midpoint=0")


def test_generate_stable(capsys):
    code, out, _ = run(capsys, "generate", "cycle", "12")
    assert code == 0 and out == to_graph6(cycle_graph(12)) + "\n"
    assert run(capsys, "generate", "cycle", "12")[1] == out


def test_generate_random_and_edges(capsys):
    code, out, err = run(
        capsys, "generate", "random_s133_free_bipartite", "5", "5", "0.7", "--seed", "3", "--format", "edges"
    )
    assert code == 0 and "attempts:" in err
    assert out.splitlines()[0].split()[0] == "10"
    assert run(capsys, "generate", "path")[0] == 3


def test_oracle(capsys, write):
    code, out, _ = run(capsys, "oracle", write("c6.txt", format_edge_list(cycle_graph(6))), "--count")
    assert code == 0 and fields(out)["count"] == "3"
    code, _, err = run(capsys, "oracle", write("p70.g6", to_graph6(path_graph(70))))
    assert code == 3 and "limit" in err


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "200", "--max-n", "12", "--seed", "7")
    assert code == 0 and out.splitlines()[0] == "agree: 200/200, fallback: 0"


def test_crosscheck_non_class(capsys):
    code, out, _ = run(capsys, "crosscheck", "150", "--max-n", "10", "--seed", "2", "--include-non-class")
    assert code == 0 and out.startswith("agree: 150/150")
    assert int(fields(out)["non_class"]) > 0


def test_crosscheck_vacuous(capsys):
    code, out, _ = run(capsys, "crosscheck", "0", "--seed", "1")
    assert code == 0 and out.strip() == "agree: 0/0, fallback: 0"


def test_crosscheck_parallel_matches(capsys):
    serial = run(capsys, "crosscheck", "60", "--max-n", "10", "--seed", "5")
    parallel = run(capsys, "crosscheck", "60", "--max-n", "10", "--seed", "5", "--jobs", "2")
    assert serial == parallel
