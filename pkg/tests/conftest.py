"""Session-scoped corpora."""

from __future__ import annotations

import pytest


@pytest.fixture(scope="session")
def corpus_by_order():
    from effdom.corpus import connected_bipartite_by_order

    return connected_bipartite_by_order(10)


@pytest.fixture(scope="session")
def class_corpus(corpus_by_order):
    from effdom.recognize import is_s133_free_bipartite

    return [g for layer in corpus_by_order.values() for g in layer if is_s133_free_bipartite(g).member]


def pytest_terminal_summary(terminalreporter):
    from .support import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
