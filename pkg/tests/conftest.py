import itertools

import pytest

from gridmagic.graph import is_bipartite


def brute_force_labellings(g, t, lo=0):
    """Every label vector in [lo, t]^E that is magic of sum t (tiny graphs only)."""
    out = []
    for labels in itertools.product(range(lo, t + 1), repeat=g.num_edges):
        if all(sum(labels[e] for e in g.incidence[v]) == t for v in range(g.num_vertices)):
            out.append(labels)
    return out


@pytest.fixture
def brute():
    return brute_force_labellings
