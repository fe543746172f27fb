import pytest

from bdhlattice.corpus import generated_corpus
from bdhlattice.graph import BipartiteGraph

ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, passed: bool, detail: str) -> None:
    """Print and remember one acceptance verdict line."""
    line = f"{criterion} {'PASS' if passed else 'FAIL'}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def labeled(pairs: str) -> BipartiteGraph:
    return BipartiteGraph.from_labeled_edges([tuple(p) for p in pairs.split()])


@pytest.fixture
def domino():
    # a, b, c on one side; d, e, f on the other; b-e is the chord
    return labeled("ad ae bd be bf ce cf")


@pytest.fixture
def c6():
    return labeled("ad bd bf cf ce ae")


@pytest.fixture
def p4():
    # x1 - y1 - x2 - y2
    return BipartiteGraph(2, 2, [(0, 0), (1, 0), (1, 1)])


@pytest.fixture
def p5():
    # x1 - y1 - x2 - y2 - x3
    return BipartiteGraph(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)])


@pytest.fixture
def k2():
    return BipartiteGraph(1, 1, [(0, 0)])


@pytest.fixture
def star():
    return BipartiteGraph(1, 3, [(0, 0), (0, 1), (0, 2)])


@pytest.fixture(scope="session")
def corpus():
    """500 seeded BDH graphs on at most 60 vertices."""
    return generated_corpus(500, 60, seed=2024)


@pytest.fixture(scope="session")
def small_corpus():
    return generated_corpus(120, 16, seed=7, min_n=2)
