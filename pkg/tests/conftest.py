import numpy as np
import pytest

from dmac.topology import build_topology


def random_tree_edges(rng, n):
    """1-based edges of a uniformly attached random tree on ``n`` nodes."""
    return [(int(rng.integers(1, k + 1)), k + 1) for k in range(1, n)]


def random_graph(rng, n, extra=0):
    edges = random_tree_edges(rng, n)
    present = {frozenset(e) for e in edges}
    for _ in range(extra):
        i, j = (int(v) for v in rng.choice(np.arange(1, n + 1), size=2, replace=False))
        if frozenset((i, j)) not in present:
            present.add(frozenset((i, j)))
            edges.append((i, j))
    return build_topology(edges, n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
