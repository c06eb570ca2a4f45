"""Multiplicities on braid arrangements and their deviation statistics.

A multiplicity on the braid arrangement A_l is stored as an edge-labelled
complete graph on ``l + 1`` vertices.  Everything here is exact integer (or
``Fraction``) arithmetic; the identities checked downstream are zero-tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BraidFreeError,
    DuplicatePair,
    IndexOutOfRange,
    MissingPair,
    MultiplicityTooLarge,
    NonPositiveMultiplicity,
    NotBalanced,
    SubsetTooSmall,
)

# Supported range: l <= 20, entries <= 10**4.  Python ints never wrap, but the
# bound keeps deviations inside 64 bits for any consumer of the JSON reports.
MAX_VERTICES = 21
MAX_MULTIPLICITY = 10**4

VertexSubset = tuple  # strictly increasing tuple of vertex indices


@dataclass(frozen=True)
class MultiBraid:
    """Symmetric table of positive multiplicities ``m_ij`` on K_{l+1}.

    Build instances with :func:`new_multiplicity` (or the ``from_*``
    classmethods); the raw constructor expects an already validated table.
    """

    vertex_count: int
    rows: tuple = field(repr=False)

    @property
    def ell(self) -> int:
        return self.vertex_count - 1

    def __getitem__(self, pair) -> int:
        i, j = pair
        if i == j:
            raise IndexOutOfRange(f"diagonal entry ({i}, {i}) is undefined")
        return self.rows[i][j]

    def edges(self):
        """Yield ``(i, j, m_ij)`` for ``i < j`` in lexicographic order."""
        n = self.vertex_count
        for i in range(n):
            for j in range(i + 1, n):
                yield i, j, self.rows[i][j]

    def edge_vector(self) -> tuple:
        return tuple(m for _, _, m in self.edges())

    @classmethod
    def from_edge_vector(cls, vertex_count: int, values: Sequence[int]) -> "MultiBraid":
        pairs = list(combinations(range(vertex_count), 2))
        if len(values) != len(pairs):
            raise MissingPair(
                f"expected {len(pairs)} edge values for {vertex_count} vertices, got {len(values)}"
            )
        return new_multiplicity(
            vertex_count, [(i, j, int(v)) for (i, j), v in zip(pairs, values)]
        )

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "MultiBraid":
        n = len(matrix)
        entries = []
        for i in range(n):
            for j in range(i + 1, n):
                if matrix[i][j] != matrix[j][i]:
                    raise BraidFreeError(f"matrix is not symmetric at ({i}, {j})")
                entries.append((i, j, int(matrix[i][j])))
        return new_multiplicity(n, entries)

    @classmethod
    def constant(cls, vertex_count: int, value: int) -> "MultiBraid":
        return new_multiplicity(
            vertex_count,
            [(i, j, value) for i, j in combinations(range(vertex_count), 2)],
        )


def new_multiplicity(vertex_count: int, entries: Iterable) -> MultiBraid:
    """Validate ``(i, j, m)`` triples covering every unordered pair exactly once."""
    if not isinstance(vertex_count, int) or vertex_count < 2:
        raise IndexOutOfRange(f"vertex_count must be an integer >= 2, got {vertex_count!r}")
    if vertex_count > MAX_VERTICES:
        raise MultiplicityTooLarge(
            f"vertex_count {vertex_count} exceeds supported maximum {MAX_VERTICES}"
        )
    rows = [[0] * vertex_count for _ in range(vertex_count)]
    seen = set()
    for entry in entries:
        i, j, m = entry
        for v in (i, j):
            if not isinstance(v, int) or not 0 <= v < vertex_count:
                raise IndexOutOfRange(f"vertex {v!r} out of range 0..{vertex_count - 1}")
        if i == j:
            raise IndexOutOfRange(f"loop ({i}, {j}) is not an edge")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicatePair(f"pair {key} listed more than once")
        seen.add(key)
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise NonPositiveMultiplicity(f"multiplicity of {key} must be a positive integer, got {m!r}")
        if m > MAX_MULTIPLICITY:
            raise MultiplicityTooLarge(f"multiplicity {m} of {key} exceeds {MAX_MULTIPLICITY}")
        rows[i][j] = rows[j][i] = m
    missing = [p for p in combinations(range(vertex_count), 2) if p not in seen]
    if missing:
        raise MissingPair(f"pairs without a multiplicity: {missing[:5]}{'...' if len(missing) > 5 else ''}")
    return MultiBraid(vertex_count, tuple(tuple(r) for r in rows))


def as_subset(m: MultiBraid, U: Iterable[int] | None) -> VertexSubset:
    """Normalise ``U`` to a sorted tuple; ``None`` means all vertices."""
    if U is None:
        return tuple(range(m.vertex_count))
    members = tuple(sorted(U))
    if len(set(members)) != len(members):
        raise DuplicatePair(f"vertex subset {members} repeats a vertex")
    for v in members:
        if not 0 <= v < m.vertex_count:
            raise IndexOutOfRange(f"vertex {v} out of range for {m.vertex_count} vertices")
    return members


def restrict(m: MultiBraid, U: Iterable[int]) -> MultiBraid:
    """Induced multiplicity on ``U``, relabelled ``0..|U|-1`` in increasing order."""
    members = as_subset(m, U)
    if len(members) < 2:
        raise SubsetTooSmall(f"restriction needs at least 2 vertices, got {len(members)}")
    k = len(members)
    rows = tuple(
        tuple(0 if a == b else m.rows[members[a]][members[b]] for b in range(k))
        for a in range(k)
    )
    return MultiBraid(k, rows)


class Violation(NamedTuple):
    """Triple ``(i, j, k)`` whose edge ``long_edge`` exceeds the other two plus one."""

    i: int
    j: int
    k: int
    long_edge: tuple


class BalanceReport(NamedTuple):
    balanced: bool
    violations: list

    def __bool__(self):
        return self.balanced


def is_balanced(m: MultiBraid) -> BalanceReport:
    violations = []
    r = m.rows
    for i, j, k in combinations(range(m.vertex_count), 3):
        a, b, c = r[i][j], r[i][k], r[j][k]
        if a > b + c + 1:
            violations.append(Violation(i, j, k, (i, j)))
        if b > a + c + 1:
            violations.append(Violation(i, j, k, (i, k)))
        if c > a + b + 1:
            violations.append(Violation(i, j, k, (j, k)))
    return BalanceReport(not violations, violations)


def _triangle_balanced(a: int, b: int, c: int) -> bool:
    return a <= b + c + 1 and b <= a + c + 1 and c <= a + b + 1


def triangle_sum(m: MultiBraid, i: int, j: int, k: int) -> int:
    if len({i, j, k}) != 3:
        raise BraidFreeError(f"triangle vertices must be distinct, got {(i, j, k)}")
    return m[i, j] + m[i, k] + m[j, k]


def odd_triangle_count(m: MultiBraid, U: Iterable[int] | None = None) -> int:
    members = as_subset(m, U)
    if len(members) < 3:
        raise SubsetTooSmall(f"need at least 3 vertices, got {len(members)}")
    r = m.rows
    return sum(
        (r[i][j] + r[i][k] + r[j][k]) & 1 for i, j, k in combinations(members, 3)
    )


def four_cycle_value(m: MultiBraid, i: int, j: int, s: int, t: int) -> int:
    """``|m_ij - m_js + m_st - m_ti|`` for the cycle visiting i, j, s, t in order."""
    if len({i, j, s, t}) != 4:
        raise BraidFreeError(f"four-cycle needs distinct vertices, got {(i, j, s, t)}")
    return abs(m[i, j] - m[j, s] + m[s, t] - m[t, i])


def _k4_cycle_values(r, a, b, c, d):
    # the three four-cycles inscribed in {a, b, c, d}
    return (
        abs(r[a][b] - r[b][c] + r[c][d] - r[d][a]),
        abs(r[a][b] - r[b][d] + r[d][c] - r[c][a]),
        abs(r[a][c] - r[c][b] + r[b][d] - r[d][a]),
    )


def k4_deviation(r, a, b, c, d) -> int:
    x, y, z = _k4_cycle_values(r, a, b, c, d)
    return x * x + y * y + z * z


def deviation(m: MultiBraid, U: Iterable[int] | None = None) -> int:
    """Sum of squared four-cycle values over all four-cycles inside ``U``."""
    members = as_subset(m, U)
    if len(members) < 4:
        return 0
    r = m.rows
    return sum(k4_deviation(r, *quad) for quad in combinations(members, 4))


def deviation_closed_form(m: MultiBraid) -> int:
    """Deviation of the full multiplicity through edge-pair incidence counts.

    Each edge lies in ``2*C(l-1, 2)`` four-cycles, each pair of disjoint edges
    in two, and each pair of adjacent edges in ``l - 2`` (with opposite signs).
    """
    ell = m.ell
    edges = list(m.edges())
    squares = sum(v * v for _, _, v in edges)
    disjoint = _disjoint_products(edges)
    adjacent = _adjacent_products(m)
    return 2 * comb(ell - 1, 2) * squares + 4 * disjoint - 2 * (ell - 2) * adjacent


def _disjoint_products(edges) -> int:
    total = 0
    for (i, j, a), (s, t, b) in combinations(edges, 2):
        if len({i, j, s, t}) == 4:
            total += a * b
    return total


def _adjacent_products(m: MultiBraid) -> int:
    r = m.rows
    total = 0
    for i, j, k in combinations(range(m.vertex_count), 3):
        a, b, c = r[i][j], r[i][k], r[j][k]
        total += a * b + a * c + b * c
    return total


def total_multiplicity(m: MultiBraid) -> int:
    return sum(v for _, _, v in m.edges())


def a2_exponents(m: MultiBraid) -> tuple:
    """Exponents of a balanced rank-two (triangle) multiplicity."""
    if m.vertex_count != 3:
        raise BraidFreeError(f"a2_exponents needs exactly 3 vertices, got {m.vertex_count}")
    if not is_balanced(m):
        raise NotBalanced("exponent formula only holds inside the balanced cone")
    s = triangle_sum(m, 0, 1, 2)
    return s // 2, (s + 1) // 2


@dataclass(frozen=True)
class MixedProductReport:
    lmp2: Fraction
    gmp2_bound: Fraction
    most_balanced_gmp2: Fraction
    remainder_p: int
    sos_residual: int


def sos_residual(m: MultiBraid) -> int:
    """Integer residual ``l*sum m_ijk^2 + 4l*disjoint - 2(l-1)|m|^2 - DV``.

    This is the scaled-by-``4l`` difference between the mixed-product
    expression and the deviation; it vanishes identically.
    """
    ell = m.ell
    r = m.rows
    tri_sq = sum(
        (r[i][j] + r[i][k] + r[j][k]) ** 2
        for i, j, k in combinations(range(m.vertex_count), 3)
    )
    total = total_multiplicity(m)
    return (
        ell * tri_sq
        + 4 * ell * _disjoint_products(list(m.edges()))
        - 2 * (ell - 1) * total * total
        - deviation(m)
    )


def mixed_products(m: MultiBraid) -> MixedProductReport:
    if not is_balanced(m):
        raise NotBalanced("local mixed product formula needs the balanced cone")
    ell = m.ell
    r = m.rows
    tri = [
        r[i][j] + r[i][k] + r[j][k]
        for i, j, k in combinations(range(m.vertex_count), 3)
    ]
    q = sum(s & 1 for s in tri)
    disjoint = _disjoint_products(list(m.edges()))
    lmp2 = sum(Fraction(s * s, 4) for s in tri) + disjoint - Fraction(q, 4)
    total = total_multiplicity(m)
    gmp2_bound = Fraction(comb(ell, 2) * total * total, ell * ell)
    p = total % ell
    most_balanced = gmp2_bound - Fraction(p * (ell - p), 2 * ell)
    return MixedProductReport(lmp2, gmp2_bound, most_balanced, p, sos_residual(m))


def enumerate_balanced(vertex_count: int, max_m: int, min_m: int = 1):
    """Yield every balanced multiplicity with entries in ``[min_m, max_m]``.

    Edges are assigned in the order (0,1), (0,2), (1,2), (0,3), ... so that a
    triangle is checked the moment its last edge is fixed.
    """
    order = [(i, j) for j in range(vertex_count) for i in range(j)]
    rows = [[0] * vertex_count for _ in range(vertex_count)]
    values = range(min_m, max_m + 1)

    def extend(pos):
        if pos == len(order):
            yield MultiBraid(vertex_count, tuple(tuple(row) for row in rows))
            return
        i, j = order[pos]
        for v in values:
            ok = True
            for k in range(i):
                if not _triangle_balanced(rows[k][i], rows[k][j], v):
                    ok = False
                    break
            if ok:
                rows[i][j] = rows[j][i] = v
                yield from extend(pos + 1)
        rows[i][j] = rows[j][i] = 0

    yield from extend(0)


def sample_balanced(vertex_count: int, max_m: int, rng, min_m: int = 1, tries: int = 1000) -> MultiBraid:
    """Random balanced multiplicity with entries in ``[min_m, max_m]``.

    Edges are drawn in enumeration order, each uniformly from the values that
    keep every completed triangle balanced; a dead end restarts the draw.
    """
    order = [(i, j) for j in range(vertex_count) for i in range(j)]
    for _ in range(tries):
        rows = [[0] * vertex_count for _ in range(vertex_count)]
        for i, j in order:
            lo, hi = min_m, max_m
            for k in range(i):
                a, b = rows[k][i], rows[k][j]
                lo = max(lo, abs(a - b) - 1)
                hi = min(hi, a + b + 1)
            if lo > hi:
                break
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
        else:
            return MultiBraid(vertex_count, tuple(tuple(r) for r in rows))
    raise BraidFreeError(f"no balanced sample found in {tries} attempts")


def canonical_relabelling(m: MultiBraid) -> tuple:
    """Lexicographically least edge vector over all vertex permutations."""
    n = m.vertex_count
    r = m.rows
    pairs = list(combinations(range(n), 2))
    return min(tuple(r[p[i]][p[j]] for i, j in pairs) for p in permutations(range(n)))
