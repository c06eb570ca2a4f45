import random
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from braidfree.arrangement import MultiBraid, sample_balanced

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def multiplicities(draw, min_vertices=2, max_vertices=6, max_m=20):
    n = draw(st.integers(min_vertices, max_vertices))
    values = draw(st.lists(st.integers(1, max_m), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return MultiBraid.from_edge_vector(n, values)


@st.composite
def balanced_multiplicities(draw, min_vertices=3, max_vertices=6, max_m=12):
    n = draw(st.integers(min_vertices, max_vertices))
    seed = draw(st.integers(0, 2**32 - 1))
    return sample_balanced(n, max_m, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(20261016)


def box(vertex_count, max_m):
    from itertools import product

    pairs = list(combinations(range(vertex_count), 2))
    for values in product(range(1, max_m + 1), repeat=len(pairs)):
        yield MultiBraid.from_edge_vector(vertex_count, values)
