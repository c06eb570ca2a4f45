"""Signed graphs, signed-elimination orderings and their forbidden structures.

An ordering lists the vertices by increasing rank: ``ordering[0]`` is the
vertex with rank 0.  For every triple whose highest-ranked vertex is ``k``
the two local conditions are checked:

* if ``ik`` and ``jk`` carry the same sign, ``ij`` carries it too;
* if ``ki`` has sign s and ``ij`` has sign -s, then ``kj`` is an edge.

Two independent routes decide eligibility: an exhaustive ordering search
(:func:`is_eliminable_bruteforce`) and the forbidden-structure test
(:func:`is_eliminable_characterization`) built from induced long one-sign
cycles, the twelve four-vertex obstructions, mountains and hills.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable

from .arrangement import MultiBraid, k4_deviation, new_multiplicity
from .errors import (
    BraidFreeError,
    IndexOutOfRange,
    InternalInconsistency,
    NonPositiveResult,
    NotAPermutation,
    TooLarge,
    TooSmall,
)

PLUS, MINUS = 1, -1
BRUTE_FORCE_LIMIT = 10


def _pair(i, j):
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class SignedGraph:
    vertex_count: int
    plus_edges: frozenset
    minus_edges: frozenset
    signs: tuple = field(compare=False, repr=False, default=())

    @classmethod
    def from_edges(cls, vertex_count: int, plus: Iterable = (), minus: Iterable = ()) -> "SignedGraph":
        plus = frozenset(_pair(*e) for e in plus)
        minus = frozenset(_pair(*e) for e in minus)
        if plus & minus:
            raise BraidFreeError(f"edges marked both + and -: {sorted(plus & minus)}")
        table = [[0] * vertex_count for _ in range(vertex_count)]
        for edges, s in ((plus, PLUS), (minus, MINUS)):
            for i, j in edges:
                if i == j:
                    raise BraidFreeError(f"loop at vertex {i}")
                if not (0 <= i < vertex_count and 0 <= j < vertex_count):
                    raise IndexOutOfRange(f"edge ({i}, {j}) outside 0..{vertex_count - 1}")
                table[i][j] = table[j][i] = s
        return cls(vertex_count, plus, minus, tuple(tuple(r) for r in table))

    @classmethod
    def from_signs(cls, signs) -> "SignedGraph":
        n = len(signs)
        plus = [(i, j) for i, j in combinations(range(n), 2) if signs[i][j] == PLUS]
        minus = [(i, j) for i, j in combinations(range(n), 2) if signs[i][j] == MINUS]
        return cls.from_edges(n, plus, minus)

    @classmethod
    def from_code(cls, n: int, code: int) -> "SignedGraph":
        """Decode a base-3 index over pairs in lexicographic order (0, +, -)."""
        plus, minus = [], []
        for pair in combinations(range(n), 2):
            code, digit = divmod(code, 3)
            if digit == 1:
                plus.append(pair)
            elif digit == 2:
                minus.append(pair)
        return cls.from_edges(n, plus, minus)

    def sign(self, i: int, j: int) -> int:
        """``m_G(ij)``: +1, -1, or 0 for a non-edge."""
        return self.signs[i][j]

    def swap(self) -> "SignedGraph":
        return SignedGraph.from_edges(self.vertex_count, self.minus_edges, self.plus_edges)

    def induced(self, U) -> "SignedGraph":
        U = list(U)
        s = self.signs
        return SignedGraph.from_signs([[s[a][b] if a != b else 0 for b in U] for a in U])

    def relabel(self, perm) -> "SignedGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return SignedGraph.from_edges(
            self.vertex_count,
            [(perm[i], perm[j]) for i, j in self.plus_edges],
            [(perm[i], perm[j]) for i, j in self.minus_edges],
        )

    def sign_vector(self) -> tuple:
        s = self.signs
        return tuple(s[i][j] for i, j in combinations(range(self.vertex_count), 2))


@dataclass(frozen=True)
class Obstruction:
    """Induced subgraph certifying non-eliminability.

    ``kind`` is one of ``sigma-cycle``, ``forbidden-four``, ``mountain``,
    ``hill`` or ``ordering-exhausted``.  ``vertices`` are listed in the
    pattern's own labelling (``v_0, v_1, ...``).
    """

    kind: str
    vertices: tuple = ()
    sign: int | None = None


@dataclass(frozen=True)
class EliminationCertificate:
    ordering: tuple | None = None
    obstruction: Obstruction | None = None

    @property
    def eliminable(self) -> bool:
        return self.ordering is not None


# --------------------------------------------------------------------------
# orderings


def _top_ok(s, k, rest) -> bool:
    """True if ``k`` may outrank every vertex in ``rest``."""
    row = s[k]
    for a in range(len(rest)):
        i = rest[a]
        ski = row[i]
        si = s[i]
        for b in range(a + 1, len(rest)):
            j = rest[b]
            skj = row[j]
            sij = si[j]
            if ski and ski == skj and sij != ski:
                return False
            if ski and sij == -ski and not skj:
                return False
            if skj and sij == -skj and not ski:
                return False
    return True


def check_ordering(G: SignedGraph, ordering) -> bool:
    ordering = tuple(ordering)
    if sorted(ordering) != list(range(G.vertex_count)):
        raise NotAPermutation(f"{ordering} is not an ordering of 0..{G.vertex_count - 1}")
    s = G.signs
    for pos in range(2, len(ordering)):
        if not _top_ok(s, ordering[pos], ordering[:pos]):
            return False
    return True


def is_eliminable_bruteforce(G: SignedGraph) -> EliminationCertificate:
    """Exhaustive search, placing the highest-ranked vertex first.

    A vertex can take the top rank of a set ``S`` depending only on ``S``,
    so dead sets are memoised by bitmask.
    """
    n = G.vertex_count
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute-force ordering search limited to {BRUTE_FORCE_LIMIT} vertices")
    s = G.signs
    dead = set()
    placed = []

    def search(mask):
        if mask in dead:
            return False
        members = [v for v in range(n) if mask >> v & 1]
        if len(members) <= 2:
            placed.extend(reversed(members))
            return True
        for k in members:
            rest = [v for v in members if v != k]
            if _top_ok(s, k, rest):
                placed.append(k)
                if search(mask & ~(1 << k)):
                    return True
                placed.pop()
        dead.add(mask)
        return False

    if search((1 << n) - 1):
        return EliminationCertificate(ordering=tuple(reversed(placed)))
    return EliminationCertificate(obstruction=Obstruction("ordering-exhausted"))


def greedy_ordering(G: SignedGraph):
    """Peel off any admissible top vertex repeatedly; ``None`` when stuck.

    Eliminability is inherited by induced subgraphs, so a greedy choice never
    has to be undone.
    """
    s = G.signs
    remaining = list(range(G.vertex_count))
    placed = []
    while len(remaining) > 2:
        for k in remaining:
            rest = [v for v in remaining if v != k]
            if _top_ok(s, k, rest):
                placed.append(k)
                remaining = rest
                break
        else:
            return None
    placed.extend(reversed(remaining))
    return tuple(reversed(placed))


# --------------------------------------------------------------------------
# chordality


def is_chordal(vertices, edges) -> bool:
    """Simplicial-vertex elimination."""
    adj = {v: set() for v in vertices}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    while adj:
        for v, nbrs in adj.items():
            if all(b in adj[a] for a, b in combinations(nbrs, 2)):
                break
        else:
            return False
        for u in adj.pop(v):
            adj[u].discard(v)
    return True


# --------------------------------------------------------------------------
# structures


def make_sigma_cycle(ell: int, sigma: int = PLUS) -> SignedGraph:
    if ell < 2:
        raise TooSmall(f"a sigma-cycle needs ell >= 2, got {ell}")
    edges = [(i, i + 1) for i in range(ell)] + [(0, ell)]
    return _signed(ell + 1, sigma, edges, [])


def make_mountain(ell: int, sigma: int = PLUS) -> SignedGraph:
    if ell < 3:
        raise TooSmall(f"a sigma-mountain needs ell >= 3, got {ell}")
    apex = [(0, i) for i in range(2, ell)]
    path = [(i, i + 1) for i in range(1, ell)]
    return _signed(ell + 1, sigma, apex, path)


def make_hill(ell: int, sigma: int = PLUS) -> SignedGraph:
    if ell < 4:
        raise TooSmall(f"sigma-hills are built for ell >= 4, got {ell}")
    same = [(0, 1)] + [(0, i) for i in range(2, ell)] + [(1, i) for i in range(3, ell + 1)]
    path = [(i, i + 1) for i in range(2, ell)]
    return _signed(ell + 1, sigma, same, path)


def _signed(n, sigma, same, opposite):
    if sigma not in (PLUS, MINUS):
        raise BraidFreeError(f"sigma must be +1 or -1, got {sigma!r}")
    if sigma == PLUS:
        return SignedGraph.from_edges(n, same, opposite)
    return SignedGraph.from_edges(n, opposite, same)


def _edges_of_sign(s, U, sign):
    return [(a, b) for a, b in combinations(U, 2) if s[a][b] == sign]


def _as_path(U, edges):
    """Order ``U`` along ``edges`` if they form a Hamiltonian path, else ``None``."""
    if len(edges) != len(U) - 1:
        return None
    if len(U) == 1:
        return list(U)
    adj = {v: [] for v in U}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    ends = sorted(v for v in U if len(adj[v]) == 1)
    if len(ends) != 2 or any(len(adj[v]) > 2 for v in U):
        return None
    path = [ends[0]]
    prev = None
    while len(path) < len(U):
        nxt = [w for w in adj[path[-1]] if w != prev]
        if not nxt:
            return None
        prev = path[-1]
        path.append(nxt[0])
    return path


def _match_cycle(s, U):
    for sigma in (PLUS, MINUS):
        same = _edges_of_sign(s, U, sigma)
        if len(same) != len(U) or _edges_of_sign(s, U, -sigma):
            continue
        adj = {v: [] for v in U}
        for a, b in same:
            adj[a].append(b)
            adj[b].append(a)
        if any(len(adj[v]) != 2 for v in U):
            continue
        start = min(U)
        cycle = [start, min(adj[start])]
        while len(cycle) < len(U):
            a, b = adj[cycle[-1]]
            nxt = b if a == cycle[-2] else a
            if nxt == start:
                break
            cycle.append(nxt)
        if len(cycle) == len(U):
            return Obstruction("sigma-cycle", tuple(cycle), sigma)
    return None


def _match_mountain(s, U):
    k = len(U)
    for sigma in (PLUS, MINUS):
        opp = _edges_of_sign(s, U, -sigma)
        if len(opp) != k - 2:
            continue
        same = _edges_of_sign(s, U, sigma)
        if len(same) != k - 3:
            continue
        touched = {v for e in opp for v in e}
        off = [v for v in U if v not in touched]
        if len(off) != 1:
            continue
        apex = off[0]
        path = _as_path([v for v in U if v != apex], opp)
        if path is None:
            continue
        if set(same) == {_pair(apex, v) for v in path[1:-1]}:
            return Obstruction("mountain", (apex, *path), sigma)
    return None


def _match_hill(s, U):
    k = len(U)
    ell = k - 1
    for sigma in (PLUS, MINUS):
        opp = _edges_of_sign(s, U, -sigma)
        if len(opp) != ell - 2:
            continue
        same = set(_edges_of_sign(s, U, sigma))
        if len(same) != 2 * ell - 3:
            continue
        touched = {v for e in opp for v in e}
        off = [v for v in U if v not in touched]
        if len(off) != 2:
            continue
        path = _as_path([v for v in U if v not in off], opp)
        if path is None:
            continue
        for a, b in (off, off[::-1]):
            for p in (path, path[::-1]):
                expected = (
                    {_pair(a, b)}
                    | {_pair(a, v) for v in p[:-1]}
                    | {_pair(b, v) for v in p[1:]}
                )
                if same == expected:
                    return Obstruction("hill", (a, b, *p), sigma)
    return None


def _four_vertex_graphs():
    """The twelve four-vertex obstructions; single edge = +, double edge = -.

    Vertices are drawn on a square: 1 top right, 2 top left, 3 bottom left,
    4 bottom right; they become 0, 1, 2, 3 here.
    """
    rows = [
        ([(1, 4), (3, 2)], [(3, 4)]),
        ([(1, 2), (1, 3)], [(1, 4)]),
        ([(1, 2), (2, 3), (3, 4), (4, 1)], []),
        ([(4, 1), (1, 2), (2, 3)], [(3, 4)]),
        ([(1, 4), (4, 2), (2, 3)], [(3, 4)]),
        ([(2, 4), (4, 3)], [(2, 3), (1, 4)]),
        ([(1, 4), (3, 2)], [(1, 2), (3, 4)]),
        ([(1, 2), (2, 3), (3, 4), (4, 1)], [(1, 3)]),
        ([(1, 2), (2, 3), (3, 4)], [(3, 1), (1, 4)]),
        ([(4, 1), (1, 3), (3, 2)], [(1, 2), (3, 4)]),
        ([(1, 4), (4, 2), (2, 3)], [(2, 1), (1, 3), (3, 4)]),
        ([(1, 2), (2, 4), (4, 3), (3, 1)], [(2, 3), (1, 4)]),
    ]
    return [
        SignedGraph.from_edges(4, [(a - 1, b - 1) for a, b in p], [(a - 1, b - 1) for a, b in q])
        for p, q in rows
    ]


FOUR_VERTEX_OBSTRUCTIONS = tuple(_four_vertex_graphs())


def canonical_form(G: SignedGraph, allow_swap: bool = False) -> tuple:
    """Lexicographically least sign vector over all relabellings."""
    n = G.vertex_count
    s = G.signs
    pairs = list(combinations(range(n), 2))
    best = None
    flips = (1, -1) if allow_swap else (1,)
    for perm in permutations(range(n)):
        inv = [0] * n
        for v, p in enumerate(perm):
            inv[p] = v
        for f in flips:
            vec = tuple(f * s[inv[i]][inv[j]] for i, j in pairs)
            if best is None or vec < best:
                best = vec
    return (n, best)


def _catalog_closure():
    closure = set()
    pairs = list(combinations(range(4), 2))
    for G in FOUR_VERTEX_OBSTRUCTIONS:
        for H in (G, G.swap()):
            for perm in permutations(range(4)):
                inv = [0] * 4
                for v, p in enumerate(perm):
                    inv[p] = v
                closure.add(tuple(H.signs[inv[i]][inv[j]] for i, j in pairs))
    return frozenset(closure)


FORBIDDEN_FOUR = _catalog_closure()


def _four_vector(s, quad):
    a, b, c, d = quad
    return (s[a][b], s[a][c], s[a][d], s[b][c], s[b][d], s[c][d])


def find_sigma_structure(G: SignedGraph):
    """First induced one-sign cycle, mountain or hill on four or more vertices.

    Subsets are scanned by size, then lexicographically.
    """
    s = G.signs
    for size in range(4, G.vertex_count + 1):
        for U in combinations(range(G.vertex_count), size):
            hit = _match_cycle(s, U) or _match_mountain(s, U) or _match_hill(s, U)
            if hit is not None:
                return hit
    return None


def find_forbidden_four(G: SignedGraph):
    s = G.signs
    for quad in combinations(range(G.vertex_count), 4):
        if _four_vector(s, quad) in FORBIDDEN_FOUR:
            return Obstruction("forbidden-four", quad)
    return None


def _find_long_cycle(s, n):
    for size in range(4, n + 1):
        for U in combinations(range(n), size):
            hit = _match_cycle(s, U)
            if hit is not None:
                return hit
    return None


def _find_mountain_or_hill(s, n):
    for size in range(4, n + 1):
        for U in combinations(range(n), size):
            hit = _match_mountain(s, U) or _match_hill(s, U)
            if hit is not None:
                return hit
    return None


def is_eliminable_characterization(G: SignedGraph) -> EliminationCertificate:
    """Decide by forbidden induced structures; certify success with an ordering."""
    s = G.signs
    n = G.vertex_count
    obstruction = _find_long_cycle(s, n) or find_forbidden_four(G) or _find_mountain_or_hill(s, n)
    if obstruction is not None:
        return EliminationCertificate(obstruction=obstruction)
    ordering = greedy_ordering(G)
    if ordering is None:
        raise InternalInconsistency(
            "no forbidden structure found but no signed-elimination ordering exists",
            instance=G,
        )
    return EliminationCertificate(ordering=ordering)


def is_eliminable(G: SignedGraph) -> EliminationCertificate:
    return is_eliminable_characterization(G)


# --------------------------------------------------------------------------
# statistics and multiplicities


def signed_stats(G: SignedGraph) -> tuple:
    """``(q_G, DV(G))`` computed on the values ``m_G(ij)`` in {-1, 0, 1}."""
    s = G.signs
    n = G.vertex_count
    q = sum((s[i][j] + s[i][k] + s[j][k]) & 1 for i, j, k in combinations(range(n), 3))
    dv = sum(k4_deviation(s, *quad) for quad in combinations(range(n), 4))
    return q, dv


def multiplicity_from_signed_graph(G: SignedGraph, n) -> MultiBraid:
    if len(n) != G.vertex_count:
        raise BraidFreeError(f"need {G.vertex_count} offsets, got {len(n)}")
    entries = []
    for i, j in combinations(range(G.vertex_count), 2):
        v = n[i] + n[j] + G.signs[i][j]
        if v < 1:
            raise NonPositiveResult(f"m_{i}{j} = {v} is not positive")
        entries.append((i, j, v))
    return new_multiplicity(G.vertex_count, entries)
