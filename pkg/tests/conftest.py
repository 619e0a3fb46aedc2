import os
import sys

import networkx as nx
import pytest

# Add project root to Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from balloonlab.services.graph import Graph, make_named  # noqa: E402


@pytest.fixture
def K3():
    return make_named("complete", 3)


@pytest.fixture
def C4():
    return make_named("cycle", 4)


@pytest.fixture
def petersen():
    return Graph.from_networkx(nx.petersen_graph())


@pytest.fixture
def graph_file(tmp_path):
    """Write graph6 lines to a file and return its path."""
    def write(*lines, name="family.g6"):
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="ascii")
        return str(path)

    return write
