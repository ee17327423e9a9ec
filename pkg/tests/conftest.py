import random

import pytest

from cutcomplex.graphs import Graph


def random_graph(rng: random.Random, n: int, density: float | None = None) -> Graph:
    density = rng.random() if density is None else density
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(20261015)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
