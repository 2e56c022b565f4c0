import pytest

from markedpoly.graph import Mark, MarkedGraph


def marked_triangle() -> MarkedGraph:
    return MarkedGraph.from_edge_list([Mark(4, 1), Mark(1, 0), Mark(2, 0)], [(0, 1), (1, 2), (0, 2)])


def path_412() -> MarkedGraph:
    return MarkedGraph.weighted([4, 1, 2], [(0, 1), (1, 2)])


def triangle_pendant() -> MarkedGraph:
    return MarkedGraph.unweighted(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def spider9() -> MarkedGraph:
    """Path a-b-c with three, two and one pendant leaves on a, b, c."""
    edges = [(0, 1), (1, 2), (0, 3), (0, 4), (0, 5), (1, 6), (1, 7), (2, 8)]
    return MarkedGraph.unweighted(9, edges)


def path(n: int) -> MarkedGraph:
    return MarkedGraph.unweighted(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> MarkedGraph:
    return MarkedGraph.unweighted(n, [(0, i) for i in range(1, n)])


def complete(n: int) -> MarkedGraph:
    return MarkedGraph.unweighted(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


@pytest.fixture
def tri():
    return marked_triangle()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
