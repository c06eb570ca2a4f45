"""Freeness verdicts for multiplicities on braid arrangements.

Inside the balanced cone two independent criteria decide freeness: the
subset deviation bound (:func:`criterion2`) and ANN decomposition plus
signed-eliminability of the epsilon graph (:func:`criterion3`).  Outside it
:func:`decide` peels off free vertices and falls back to balanced
restrictions; when neither settles the question the verdict is ``Unknown``.

Subsets and vertex lists in certificates always use the labels of the
multiplicity handed to the top-level call.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .ann import AnnDecomposition, ann_decompose, eps_graph, verify_decomposition
from .arrangement import (
    MultiBraid,
    deviation,
    is_balanced,
    k4_deviation,
    odd_triangle_count,
    restrict,
    total_multiplicity,
)
from .errors import InternalInconsistency, NotAFreeVertex, NotAnn, NotBalanced
from .signed_graph import Obstruction, check_ordering, is_eliminable

logger = logging.getLogger(__name__)


class Status(str, enum.Enum):
    FREE = "Free"
    NOT_FREE = "NotFree"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RankAtMostTwo:
    vertices: tuple


@dataclass(frozen=True)
class BalancedCriterion2Pass:
    vertices: tuple
    strengthened: bool = False


@dataclass(frozen=True)
class AnnEliminable:
    """Decomposition and elimination ordering, indexed by position in ``vertices``."""

    vertices: tuple
    decomposition: AnnDecomposition
    ordering: tuple


@dataclass(frozen=True)
class WitnessSubset:
    subset: tuple
    deviation: int
    odd_triangles: int
    bound: int


@dataclass(frozen=True)
class StructureWitness:
    """The epsilon graph of ``decomposition`` contains ``obstruction``."""

    vertices: tuple
    decomposition: AnnDecomposition
    obstruction: Obstruction


@dataclass(frozen=True)
class NoDecomposition:
    vertices: tuple
    reason: str


@dataclass(frozen=True)
class ReductionChain:
    eliminated: tuple
    core: tuple
    inner: "FreenessVerdict"


@dataclass(frozen=True)
class NoDecision:
    core: tuple
    reason: str


@dataclass(frozen=True)
class FreenessVerdict:
    status: Status
    certificate: object

    @property
    def free(self) -> bool:
        return self.status is Status.FREE


@dataclass(frozen=True)
class CriterionResult:
    passed: bool
    certificate: object


# --------------------------------------------------------------------------
# subset scanning


class _SubsetTable:
    """Per-triple and per-quadruple data for sweeping subsets of ``vertices``."""

    def __init__(self, m: MultiBraid, vertices):
        r = m.rows
        self.m = m
        self.vertices = tuple(vertices)
        self.odd = {}
        self.balanced = {}
        for t in combinations(self.vertices, 3):
            i, j, k = t
            a, b, c = r[i][j], r[i][k], r[j][k]
            self.odd[t] = (a + b + c) & 1
            self.balanced[t] = a <= b + c + 1 and b <= a + c + 1 and c <= a + b + 1
        self.quad = {q: k4_deviation(r, *q) for q in combinations(self.vertices, 4)}

    def stats(self, U):
        r = self.m.rows
        dv = sum(self.quad[q] for q in combinations(U, 4))
        q = sum(self.odd[t] for t in combinations(U, 3))
        total = sum(r[i][j] for i, j in combinations(U, 2))
        return dv, q, total

    def is_balanced(self, U) -> bool:
        return all(self.balanced[t] for t in combinations(U, 3))

    def first_violation(self, strengthened: bool, require_balanced: bool):
        for size in range(4, len(self.vertices) + 1):
            for U in combinations(self.vertices, size):
                if require_balanced and not self.is_balanced(U):
                    continue
                dv, q, total = self.stats(U)
                b = subset_bound(q, size, total, strengthened)
                if dv > b:
                    return WitnessSubset(U, dv, q, b)
        return None


def subset_bound(q: int, size: int, total: int, strengthened: bool = False) -> int:
    """Largest deviation a free restriction on ``size`` vertices can have."""
    k = size - 1
    if not strengthened:
        return q * k
    p = total % k
    return q * k - 2 * p * (k - p)


# --------------------------------------------------------------------------
# the two balanced criteria


def _all(m: MultiBraid, vertices):
    return tuple(range(m.vertex_count)) if vertices is None else tuple(vertices)


def criterion2(m: MultiBraid, strengthened: bool = False, vertices=None) -> CriterionResult:
    """Deviation bound on every restriction with at least four vertices.

    The first failing subset in order of size, then lexicographic order, is
    returned as the witness.
    """
    vertices = _all(m, vertices)
    sub = restrict(m, vertices) if len(vertices) >= 2 else m
    if not is_balanced(sub):
        raise NotBalanced("criterion2 needs a balanced multiplicity")
    witness = _SubsetTable(m, vertices).first_violation(strengthened, require_balanced=False)
    if witness is not None:
        return CriterionResult(False, witness)
    return CriterionResult(True, BalancedCriterion2Pass(vertices, strengthened))


def criterion3(m: MultiBraid, vertices=None) -> CriterionResult:
    """ANN decomposition whose epsilon graph is signed-eliminable."""
    vertices = _all(m, vertices)
    sub = restrict(m, vertices)
    if not is_balanced(sub):
        raise NotBalanced("criterion3 needs a balanced multiplicity")
    try:
        d = ann_decompose(sub)
    except NotAnn as exc:
        return CriterionResult(False, NoDecomposition(vertices, str(exc)))
    cert = is_eliminable(eps_graph(d))
    if cert.eliminable:
        return CriterionResult(True, AnnEliminable(vertices, d, cert.ordering))
    return CriterionResult(False, StructureWitness(vertices, d, cert.obstruction))


def decide_balanced(m: MultiBraid, strengthened: bool = False, vertices=None) -> FreenessVerdict:
    """Verdict from the deviation criterion, cross-checked against criterion 3."""
    vertices = _all(m, vertices)
    c2 = criterion2(m, strengthened, vertices)
    c3 = criterion3(m, vertices)
    if c2.passed != c3.passed:
        logger.error("criteria disagree on %s restricted to %s", m, vertices)
        raise InternalInconsistency(
            f"criterion2 {'passes' if c2.passed else 'fails'} but criterion3 "
            f"{'passes' if c3.passed else 'fails'}",
            instance=restrict(m, vertices),
        )
    if c2.passed:
        return FreenessVerdict(Status.FREE, c3.certificate)
    return FreenessVerdict(Status.NOT_FREE, c2.certificate)


# --------------------------------------------------------------------------
# free vertices


def _neighbours(g, v, vertices):
    return [u for u in vertices if u != v and g(u, v) is not None]


def _label_fn(g):
    if isinstance(g, MultiBraid):
        r = g.rows
        return lambda i, j: r[i][j]
    labels = {tuple(sorted(e)): w for e, w in g.items()}
    return lambda i, j: labels.get((i, j) if i < j else (j, i))


def find_free_vertices(g: MultiBraid | Mapping, vertices=None) -> tuple:
    """Vertices that are simplicial with ``m_vi + m_vj <= m_ij + 1`` on every triangle.

    ``g`` is a multiplicity or a mapping ``{(i, j): m}`` describing an
    edge-labelled graph; ``vertices`` restricts attention to an induced
    subgraph.
    """
    label = _label_fn(g)
    if vertices is None:
        if isinstance(g, MultiBraid):
            vertices = range(g.vertex_count)
        else:
            vertices = sorted({v for e in g for v in e})
    vertices = tuple(vertices)
    free = []
    for v in vertices:
        nbrs = _neighbours(label, v, vertices)
        ok = True
        for i, j in combinations(nbrs, 2):
            mij = label(i, j)
            if mij is None or label(v, i) + label(v, j) > mij + 1:
                ok = False
                break
        if ok:
            free.append(v)
    return tuple(free)


def eliminate_free_vertex(m: MultiBraid, v: int) -> MultiBraid:
    if v not in find_free_vertices(m):
        raise NotAFreeVertex(f"vertex {v} is not a free vertex")
    return restrict(m, [u for u in range(m.vertex_count) if u != v])


def reduce_free_vertices(m: MultiBraid, vertices=None):
    """Greedily drop the lowest-index free vertex; return ``(eliminated, core)``."""
    core = list(_all(m, vertices))
    eliminated = []
    while len(core) > 3:
        free = find_free_vertices(m, core)
        if not free:
            break
        eliminated.append(free[0])
        core.remove(free[0])
    return tuple(eliminated), tuple(core)


# --------------------------------------------------------------------------
# pipeline


def decide(m: MultiBraid, strengthened: bool = False) -> FreenessVerdict:
    """Full decision pipeline; never guesses outside what the criteria prove."""
    if m.vertex_count <= 3:
        return FreenessVerdict(Status.FREE, RankAtMostTwo(tuple(range(m.vertex_count))))
    eliminated, core = reduce_free_vertices(m)
    inner = _decide_core(m, core, strengthened)
    if not eliminated:
        return inner
    return FreenessVerdict(inner.status, ReductionChain(eliminated, core, inner))


def _decide_core(m, core, strengthened):
    if len(core) <= 3:
        return FreenessVerdict(Status.FREE, RankAtMostTwo(core))
    table = _SubsetTable(m, core)
    if table.is_balanced(core):
        return decide_balanced(m, strengthened, core)
    witness = table.first_violation(strengthened, require_balanced=True)
    if witness is not None:
        return FreenessVerdict(Status.NOT_FREE, witness)
    return FreenessVerdict(
        Status.UNKNOWN,
        NoDecision(core, "unbalanced core without free vertices or failing balanced restriction"),
    )


# --------------------------------------------------------------------------
# constructions from a free ANN prefix plus free vertices


@dataclass(frozen=True)
class Construction:
    """``ordering[:k + 1]`` is a free ANN prefix; each later vertex is free in its prefix."""

    ordering: tuple
    k: int


def find_construction(m: MultiBraid) -> Construction | None:
    """Search for an ordering built from a free ANN prefix by adding free vertices.

    Prefixes with at most three vertices are tried first, so the returned
    ``k`` is as small as the search finds.
    """

    @lru_cache(maxsize=None)
    def search(S):
        if len(S) <= 2:
            return S, len(S) - 1
        if len(S) == 3 and _free_ann(m, S):
            return S, 2
        for v in find_free_vertices(m, S):
            rest = tuple(u for u in S if u != v)
            found = search(rest)
            if found is not None:
                return found[0] + (v,), found[1]
        if len(S) > 3 and _free_ann(m, S):
            return S, len(S) - 1
        return None

    found = search(tuple(range(m.vertex_count)))
    if found is None:
        return None
    return Construction(*found)


def _free_ann(m, S) -> bool:
    if not is_balanced(restrict(m, S)):
        return False
    return criterion3(m, S).passed


def check_construction(m: MultiBraid, c: Construction) -> bool:
    order = c.ordering
    if sorted(order) != list(range(m.vertex_count)) or not 0 <= c.k < len(order):
        return False
    prefix = order[: c.k + 1]
    if len(prefix) >= 3 and not _free_ann(m, prefix):
        return False
    for i in range(c.k + 1, len(order)):
        if order[i] not in find_free_vertices(m, order[: i + 1]):
            return False
    return True


# --------------------------------------------------------------------------
# certificate checking


def verify_verdict(m: MultiBraid, verdict: FreenessVerdict, strengthened: bool = False) -> bool:
    """Re-check a certificate with the primitive definitions only."""
    return _check(m, verdict.status, verdict.certificate, tuple(range(m.vertex_count)), strengthened)


def _check(m, status, cert, vertices, strengthened) -> bool:
    r = m.rows
    if isinstance(cert, RankAtMostTwo):
        return status is Status.FREE and len(cert.vertices) <= 3 and set(cert.vertices) <= set(vertices)
    if isinstance(cert, ReductionChain):
        current = list(vertices)
        for v in cert.eliminated:
            if v not in current:
                return False
            others = [u for u in current if u != v]
            if any(r[v][i] + r[v][j] > r[i][j] + 1 for i, j in combinations(others, 2)):
                return False
            current = others
        if tuple(current) != tuple(cert.core) or cert.inner.status is not status:
            return False
        return _check(m, status, cert.inner.certificate, tuple(current), strengthened)
    if isinstance(cert, AnnEliminable):
        sub = restrict(m, cert.vertices)
        return (
            status is Status.FREE
            and tuple(cert.vertices) == tuple(vertices)
            and bool(is_balanced(sub))
            and verify_decomposition(sub, cert.decomposition)
            and check_ordering(eps_graph(cert.decomposition), cert.ordering)
        )
    if isinstance(cert, WitnessSubset):
        U = cert.subset
        if status is not Status.NOT_FREE or len(U) < 4 or not set(U) <= set(vertices):
            return False
        sub = restrict(m, U)
        if not is_balanced(sub):
            return False
        dv = deviation(sub)
        q = odd_triangle_count(sub)
        bound = subset_bound(q, len(U), total_multiplicity(sub), strengthened)
        return dv == cert.deviation and q == cert.odd_triangles and dv > bound
    if isinstance(cert, NoDecision):
        return status is Status.UNKNOWN
    return False
