"""Fixtures compartilhadas pelos testes."""
import pytest

from pathagg.core.generators import gen_binary_tree_lower_bound, gen_crossing_pair
from pathagg.core.instance import Instance

from .strategies import tree_instance


@pytest.fixture
def crossing_pair() -> Instance:
    return gen_crossing_pair()


@pytest.fixture
def three_vertex() -> Instance:
    """r=0, u=1, v=2: P_u = 1->0 em vermelho, P_v = 2->1->0 em azul."""
    arcs = [(1, 0, "red"), (2, 1, "blue"), (1, 0, "blue")]
    return Instance.from_arcs(3, 0, arcs, {1: [0], 2: [1, 2]}, terminals=[1, 2])


@pytest.fixture
def star() -> Instance:
    """Dois terminais cujos caminhos passam pelo terminal 1."""
    arcs = [(1, 0, "a"), (2, 1, "b"), (1, 0, "b"), (3, 1, "c"), (1, 0, "c")]
    return Instance.from_arcs(4, 0, arcs, {1: [0], 2: [1, 2], 3: [3, 4]}, terminals=[1, 2, 3])


@pytest.fixture
def single_path() -> Instance:
    arcs = [(3, 2, "x"), (2, 1, "x"), (1, 0, "x")]
    return Instance.from_arcs(4, 0, arcs, {3: [0, 1, 2]}, terminals=[3])


@pytest.fixture
def spine_tree() -> Instance:
    """Arcos da árvore: 1->0, 2->1, 3->2, 4->1, 5->3."""
    return tree_instance({1: 0, 2: 1, 3: 2, 4: 1, 5: 3})


@pytest.fixture
def lb_tree_d2() -> Instance:
    return gen_binary_tree_lower_bound(2)
