import pytest

from taulab.graphs import build_graph


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])


@pytest.fixture
def k4():
    return build_graph(4, [
        (0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0),
        (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0),
    ])


@pytest.fixture
def banana3():
    return build_graph(2, [(0, 1, 1.0), (0, 1, 1.0), (0, 1, 1.0)])


@pytest.fixture
def path2():
    # two unit edges in a row, the smallest tree with an interior vertex
    return build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)])
