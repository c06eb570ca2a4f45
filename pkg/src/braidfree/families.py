"""Named multiplicities used in examples, tests and the acceptance suite."""

from __future__ import annotations

from itertools import combinations

from .arrangement import MultiBraid, new_multiplicity

# two edge-disjoint five-cycles covering K5
CYCLE_S = ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4))
CYCLE_T = ((0, 2), (2, 4), (1, 4), (1, 3), (0, 3))

def two_paths(s: int, t: int) -> MultiBraid:
    """K4 with ``s`` on the path 0-1-2-3 and ``t`` on the complementary path 2-0-3-1."""
    return new_multiplicity(4, [(0, 1, s), (1, 2, s), (2, 3, s), (0, 2, t), (0, 3, t), (1, 3, t)])


def two_five_cycles(s: int, t: int) -> MultiBraid:
    """K5 with ``s`` on the cycle 0-1-2-3-4 and ``t`` on the cycle 0-2-4-1-3."""
    return new_multiplicity(
        5, [(i, j, s if (i, j) in CYCLE_S else t) for i, j in combinations(range(5), 2)]
    )


def hidden_witness() -> MultiBraid:
    """Balanced K5 whose full-set deviation meets the bound but a four-subset fails."""
    ones = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4)]
    twos = [(0, 4), (1, 3), (2, 3), (2, 4)]
    return new_multiplicity(5, [(i, j, 1) for i, j in ones] + [(i, j, 2) for i, j in twos] + [(3, 4, 3)])


def with_pendant(m: MultiBraid, value: int = 1) -> MultiBraid:
    """Append a vertex joined to every existing vertex with ``value``."""
    n = m.vertex_count
    return new_multiplicity(n + 1, list(m.edges()) + [(i, n, value) for i in range(n)])
