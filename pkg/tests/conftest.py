import numpy as np
import pytest
from hypothesis import settings

from pmlab.graphs import Graph

settings.register_profile("pkg", deadline=None, max_examples=40)
settings.load_profile("pkg")


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    mask = rng.random((n, n)) < p
    edges = frozenset((i, j) for i in range(n) for j in range(i + 1, n) if mask[i, j])
    return Graph(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
