"""Closed-form counts of induced four-vertex subgraphs of cycles, mountains and hills.

Each row describes one isomorphism type on vertices 0..3 by its same-sign
and opposite-sign edges (relative to the structure's sign), a count formula
in ``l`` (one less than the number of vertices), and the claimed ``q_U`` and
``DV(G_U)`` of the type.  The formulas are kept exactly as stated so that
:func:`braidfree.verify.verify_structure_tables` can test them.
"""

from __future__ import annotations

from math import comb
from typing import Callable, NamedTuple


def C(n: int, k: int) -> int:
    """Binomial coefficient, zero whenever ``n < k`` (including negative ``n``)."""
    return comb(n, k) if 0 <= k <= n else 0


class Row(NamedTuple):
    same: list
    opposite: list
    formula: str
    count: Callable[[int], int]
    q: int
    dv: int


CYCLE_ROWS = (
    Row([], [], 'C(l - 4, 2) + C(l - 3, 2)', lambda l: C(l - 4, 2) + C(l - 3, 2), 0, 0),
    Row([(0, 1)], [], '(l + 1) * C(l - 4, 2)', lambda l: (l + 1) * C(l - 4, 2), 2, 2),
    Row([(0, 1), (2, 3)], [], '((l + 1) * (l - 4)) // 2', lambda l: ((l + 1) * (l - 4)) // 2, 4, 8),
    Row([(0, 1), (1, 2)], [], '(l + 1) * (l - 4)', lambda l: (l + 1) * (l - 4), 2, 2),
    Row([(0, 1), (1, 2), (2, 3)], [], 'l + 1', lambda l: l + 1, 2, 6),
)

MOUNTAIN_ROWS = (
    Row([], [], 'C(l - 3, 4)', lambda l: C(l - 3, 4), 0, 0),
    Row([], [(0, 1)], '3 * C(l - 3, 3)', lambda l: 3 * C(l - 3, 3), 2, 2),
    Row([], [(0, 1), (1, 2)], '2 * C(l - 3, 2)', lambda l: 2 * C(l - 3, 2), 2, 2),
    Row([], [(0, 1), (2, 3)], '2 * l - 9 + C(l - 5, 2)', lambda l: 2 * l - 9 + C(l - 5, 2), 4, 8),
    Row([], [(0, 1), (1, 2), (2, 3)], '(l - 3)', lambda l: (l - 3), 2, 6),
    Row([(0, 1)], [], 'l - 4', lambda l: l - 4, 2, 2),
    Row([(0, 1)], [(1, 2)], '2', lambda l: 2, 2, 6),
    Row([(0, 1), (1, 2)], [], '2 * C(l - 4, 2)', lambda l: 2 * C(l - 4, 2), 2, 2),
    Row([(0, 1), (1, 2)], [(0, 2)], '2 * (l - 4)', lambda l: 2 * (l - 4), 4, 8),
    Row([(0, 1), (1, 2)], [(2, 3)], '2 * (l - 4)', lambda l: 2 * (l - 4), 2, 2),
    Row([(0, 1), (1, 2)], [(0, 2), (2, 3)], '2', lambda l: 2, 2, 6),
    Row([(0, 1), (1, 2), (1, 3)], [], 'C(l - 4, 3)', lambda l: C(l - 4, 3), 0, 0),
    Row([(0, 1), (1, 2), (1, 3)], [(2, 3)], '2 * C(l - 4, 2)', lambda l: 2 * C(l - 4, 2), 2, 2),
    Row([(0, 1), (1, 2), (1, 3)], [(0, 3), (2, 3)], 'l - 4', lambda l: l - 4, 2, 2),
)

HILL_ROWS = (
    Row([], [], 'C(l - 4, 4)', lambda l: C(l - 4, 4), 0, 0),
    Row([], [(0, 1)], '3 * C(l - 4, 3)', lambda l: 3 * C(l - 4, 3), 2, 2),
    Row([], [(0, 1), (1, 2)], '2 * C(l - 4, 2)', lambda l: 2 * C(l - 4, 2), 2, 2),
    Row([], [(0, 1), (2, 3)], '2 * l - 11 + C(l - 6, 2)', lambda l: 2 * l - 11 + C(l - 6, 2), 4, 8),
    Row([], [(0, 1), (1, 2), (2, 3)], 'l - 4', lambda l: l - 4, 2, 6),
    Row([(0, 1), (1, 2)], [], '2 * C(l - 4, 2)', lambda l: 2 * C(l - 4, 2), 2, 2),
    Row([(0, 1), (1, 2)], [(0, 2)], '2 * (l - 4)', lambda l: 2 * (l - 4), 4, 8),
    Row([(0, 1), (1, 2)], [(2, 3)], '2 * (l - 4)', lambda l: 2 * (l - 4), 2, 2),
    Row([(0, 1), (1, 2)], [(0, 2), (2, 3)], '2', lambda l: 2, 2, 6),
    Row([(0, 1), (1, 2), (1, 3)], [], '2 * C(l - 4, 3)', lambda l: 2 * C(l - 4, 3), 0, 0),
    Row([(0, 1), (1, 2), (1, 3)], [(2, 3)], '4 * C(l - 4, 2)', lambda l: 4 * C(l - 4, 2), 2, 2),
    Row([(0, 1), (1, 2), (1, 3)], [(0, 3), (2, 3)], '2 * (l - 4)', lambda l: 2 * (l - 4), 2, 2),
    Row([(0, 1), (1, 2), (2, 3)], [], '1', lambda l: 1, 2, 6),
    Row([(0, 1), (0, 2), (1, 2), (1, 3)], [], '2 * (l - 4)', lambda l: 2 * (l - 4), 2, 2),
    Row([(0, 1), (0, 2), (1, 2), (1, 3)], [(2, 3)], '2', lambda l: 2, 2, 6),
    Row([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], [], 'C(l - 4, 2)', lambda l: C(l - 4, 2), 2, 2),
    Row([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], [(0, 3)], 'l - 4', lambda l: l - 4, 4, 8),
)

TABLES = {"cycle": CYCLE_ROWS, "mountain": MOUNTAIN_ROWS, "hill": HILL_ROWS}
