import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from inducibility.graphs import Graph
from inducibility.search import _classes


@pytest.fixture(scope="session")
def classes_by_n():
    """One representative per isomorphism class, keyed by vertex count."""
    return {n: _classes(n) for n in range(8)}


@pytest.fixture
def p3():
    return Graph.path(3)


@pytest.fixture
def p4():
    return Graph.path(4)


@pytest.fixture
def two_k2():
    return Graph.from_edges(4, [(0, 1), (2, 3)])
