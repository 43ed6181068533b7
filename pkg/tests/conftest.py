import random

import pytest

from incsssp import Graph


def random_graph(n, m, max_weight, seed):
    rng = random.Random(seed)
    g = Graph(n, max_weight)
    seen = set()
    added = 0
    limit = min(m, n * (n - 1))
    while added < limit:
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        if (u, v) in seen:
            continue
        seen.add((u, v))
        g.insert_edge(u, v, rng.randint(1, max_weight))
        added += 1
    return g


@pytest.fixture
def small_graph():
    return random_graph(12, 40, 6, seed=3)
