"""Batch sweeps that recheck identities, catalogs and the criteria against each other.

Every sweep returns a :class:`SweepReport`.  Reports are deterministic for a
given configuration: instances are enumerated in a fixed order, sampling is
seeded, and parallel chunks are merged back in order.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import comb
from pathlib import Path

from .arrangement import (
    MultiBraid,
    canonical_relabelling,
    enumerate_balanced,
    sample_balanced,
    sos_residual,
)
from .errors import BraidFreeError, BudgetExceeded
from .formats import multiplicity_from_json, multiplicity_to_json, verdict_to_json
from .freeness import Status, criterion2, criterion3, decide, verify_verdict
from .signed_graph import (
    FORBIDDEN_FOUR,
    FOUR_VERTEX_OBSTRUCTIONS,
    SignedGraph,
    canonical_form,
    is_eliminable_bruteforce,
    make_hill,
    make_mountain,
    make_sigma_cycle,
    signed_stats,
)
from .structure_tables import TABLES

MODES = ("equivalence", "identity", "tables", "catalog", "conjecture")
DEFAULT_BUDGET = 5_000_000
PARALLEL_THRESHOLD = 20_000


@dataclass(frozen=True)
class SweepConfig:
    ell: int
    max_mult: int
    mode: str = "equivalence"
    sample_count: int | None = None
    seed: int = 0
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.ell < 1 or self.max_mult < 1:
            raise BraidFreeError(f"ell and max_mult must be positive, got {self.ell}, {self.max_mult}")
        if self.mode not in MODES:
            raise BraidFreeError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.sample_count is not None and self.sample_count < 1:
            raise BraidFreeError("sample_count must be positive")

    @property
    def vertex_count(self) -> int:
        return self.ell + 1

    def estimated_instances(self) -> int:
        if self.sample_count is not None:
            return self.sample_count
        return self.max_mult ** comb(self.vertex_count, 2)

    def check_budget(self) -> None:
        n = self.estimated_instances()
        if n > self.budget:
            raise BudgetExceeded(f"estimated {n} instances exceeds budget {self.budget}")


@dataclass
class SweepReport:
    name: str
    instances: int = 0
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "instances": self.instances,
            "violations": len(self.violations),
            "elapsed_seconds": round(self.elapsed, 3),
            **self.details,
        }

    def records(self):
        """JSON lines: one per violation, then the summary."""
        for v in self.violations:
            yield json.dumps(v, sort_keys=True)
        yield json.dumps({"summary": self.summary()}, sort_keys=True)


def thread_count() -> int:
    cap = os.environ.get("BRAIDFREE_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise BraidFreeError(f"BRAIDFREE_THREADS must be an integer, got {cap!r}") from None
    return n


def _chunked_map(fn, items: list, threads: int | None = None) -> list:
    """``[fn(chunk) for chunk in chunks]`` in order, across processes when it pays."""
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(items) < PARALLEL_THRESHOLD:
        return [fn(items)]
    size = -(-len(items) // (threads * 4))
    chunks = [items[i : i + size] for i in range(0, len(items), size)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


def _balanced_instances(cfg: SweepConfig):
    if cfg.sample_count is None:
        return enumerate_balanced(cfg.vertex_count, cfg.max_mult)
    rng = random.Random(cfg.seed)
    return (sample_balanced(cfg.vertex_count, cfg.max_mult, rng) for _ in range(cfg.sample_count))


# --------------------------------------------------------------------------
# identities


def verify_sos_identity(cfg: SweepConfig) -> SweepReport:
    """The integer-scaled sum-of-squares residual vanishes on balanced inputs."""
    cfg.check_budget()
    report = SweepReport("sos", details={"ell": cfg.ell, "max_mult": cfg.max_mult})
    start = time.perf_counter()
    for m in _balanced_instances(cfg):
        report.instances += 1
        res = sos_residual(m)
        if res != 0:
            report.violations.append({"multiplicity": multiplicity_to_json(m), "residual": res})
    report.elapsed = time.perf_counter() - start
    return report


# --------------------------------------------------------------------------
# structure tables


_MAKERS = {"cycle": (make_sigma_cycle, 3), "mountain": (make_mountain, 3), "hill": (make_hill, 4)}


def _row_graph(row) -> SignedGraph:
    return SignedGraph.from_edges(4, row.same, row.opposite)


def verify_structure_tables(ell_range=range(3, 11), structures=("cycle", "mountain", "hill")) -> SweepReport:
    """Compare every tabulated row against enumeration of induced four-subsets.

    Checks, per structure and ``l``: each row's ``q_U`` and ``DV(G_U)`` against
    its own drawing; each count formula against the enumerated count; that
    no four-subset falls outside the listed types; that the row counts sum to
    ``C(l+1, 4)``; the totals ``q = l^2 - 2l - 3`` and ``DV = l^3 - 2l^2 - l + 2``
    both directly and through the four-subset sums; and ``DV = q l + 2(l + 1)``.
    """
    report = SweepReport("tables")
    start = time.perf_counter()
    rows_checked = 0
    for name in structures:
        maker, min_ell = _MAKERS[name]
        table = TABLES[name]
        keys = [canonical_form(_row_graph(r)) for r in table]
        for i, row in enumerate(table):
            q, dv = signed_stats(_row_graph(row))
            if (q, dv) != (row.q, row.dv):
                report.violations.append(
                    {"structure": name, "row": i, "check": "row-stats", "stated": [row.q, row.dv], "computed": [q, dv]}
                )
        for ell in ell_range:
            if ell < min_ell:
                continue
            G = maker(ell)
            report.instances += 1
            counts = {}
            untabled = {}
            sum_q = sum_dv = 0
            for U in combinations(range(ell + 1), 4):
                H = G.induced(U)
                k = canonical_form(H)
                q_u, dv_u = signed_stats(H)
                sum_q += q_u
                sum_dv += dv_u
                if k in keys:
                    counts[k] = counts.get(k, 0) + 1
                else:
                    untabled[k] = untabled.get(k, 0) + 1
            for i, (row, k) in enumerate(zip(table, keys)):
                rows_checked += 1
                stated = row.count(ell)
                found = counts.get(k, 0)
                if stated != found:
                    report.violations.append(
                        {"structure": name, "ell": ell, "row": i, "check": "count",
                         "formula": row.formula, "stated": stated, "enumerated": found}
                    )
            for k, n in sorted(untabled.items()):
                report.violations.append(
                    {"structure": name, "ell": ell, "check": "untabled-type", "signs": list(k[1]), "enumerated": n}
                )
            stated_total = sum(row.count(ell) for row in table)
            if stated_total != comb(ell + 1, 4):
                report.violations.append(
                    {"structure": name, "ell": ell, "check": "row-sum", "stated": stated_total, "expected": comb(ell + 1, 4)}
                )
            q, dv = signed_stats(G)
            q_formula, dv_formula = ell * ell - 2 * ell - 3, ell**3 - 2 * ell**2 - ell + 2
            checks = {
                "q-total": (q, q_formula),
                "dv-total": (dv, dv_formula),
                "dv-from-subsets": (sum_dv, dv),
                "dv-identity": (dv, q * ell + 2 * (ell + 1)),
            }
            if ell > 2:
                if sum_q % (ell - 2):
                    report.violations.append({"structure": name, "ell": ell, "check": "q-division", "sum": sum_q})
                checks["q-from-subsets"] = (sum_q // (ell - 2), q)
            for check, (got, want) in checks.items():
                if got != want:
                    report.violations.append(
                        {"structure": name, "ell": ell, "check": check, "computed": got, "expected": want}
                    )
    report.details["rows_checked"] = rows_checked
    report.elapsed = time.perf_counter() - start
    return report


# --------------------------------------------------------------------------
# four-vertex catalog


def verify_table1_catalog() -> SweepReport:
    """Brute-force all 729 four-vertex signed graphs against the stored catalog."""
    report = SweepReport("catalog")
    start = time.perf_counter()
    bad_classes = set()
    bad_vectors = set()
    for code in range(3**6):
        G = SignedGraph.from_code(4, code)
        report.instances += 1
        if not is_eliminable_bruteforce(G).eliminable:
            bad_classes.add(canonical_form(G, allow_swap=True))
            bad_vectors.add(G.sign_vector())
    catalog_classes = {canonical_form(G, allow_swap=True) for G in FOUR_VERTEX_OBSTRUCTIONS}
    if len(catalog_classes) != len(FOUR_VERTEX_OBSTRUCTIONS):
        report.violations.append({"check": "catalog-duplicates", "distinct": len(catalog_classes)})
    for k in sorted(bad_classes - catalog_classes):
        report.violations.append({"check": "missing-from-catalog", "signs": list(k[1])})
    for k in sorted(catalog_classes - bad_classes):
        report.violations.append({"check": "catalog-entry-eliminable", "signs": list(k[1])})
    if bad_vectors != set(FORBIDDEN_FOUR):
        report.violations.append({"check": "closure-mismatch"})
    for i, G in enumerate(FOUR_VERTEX_OBSTRUCTIONS):
        q, dv = signed_stats(G)
        if not dv > 3 * q:
            report.violations.append({"check": "dv-bound", "entry": i, "q": q, "dv": dv})
    report.details.update(
        classes=len(bad_classes),
        non_eliminable_graphs=len(bad_vectors),
    )
    report.elapsed = time.perf_counter() - start
    return report


# --------------------------------------------------------------------------
# criterion equivalence


def _equivalence_chunk(items):
    n, vectors = items[0][0], [v for _, v in items]
    found = []
    free = 0
    for vec in vectors:
        m = MultiBraid.from_edge_vector(n, vec)
        a = criterion2(m).passed
        b = criterion3(m).passed
        free += a
        if a != b:
            found.append(vec)
    return free, found


def verify_equivalence(cfg: SweepConfig, dump_dir: str | os.PathLike | None = None) -> SweepReport:
    """criterion2 and criterion3 agree on every balanced instance of the sweep.

    Disagreements are written to ``dump_dir`` (smallest total multiplicity
    first) as multiplicity JSON files.
    """
    cfg.check_budget()
    report = SweepReport("equivalence", details={"ell": cfg.ell, "max_mult": cfg.max_mult})
    start = time.perf_counter()
    items = [(cfg.vertex_count, m.edge_vector()) for m in _balanced_instances(cfg)]
    report.instances = len(items)
    free = 0
    bad = []
    for f, found in _chunked_map(_equivalence_chunk, items):
        free += f
        bad.extend(found)
    bad.sort(key=lambda v: (sum(v), v))
    for k, vec in enumerate(bad):
        m = MultiBraid.from_edge_vector(cfg.vertex_count, vec)
        record = {"multiplicity": multiplicity_to_json(m), "criterion2": criterion2(m).passed}
        if dump_dir is not None:
            path = Path(dump_dir) / f"disagreement-{k:04d}.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(multiplicity_to_json(m), sort_keys=True) + "\n")
            record["file"] = str(path)
        report.violations.append(record)
    report.details.update(free=free, not_free=report.instances - free)
    report.elapsed = time.perf_counter() - start
    return report


def recheck_counterexample(path) -> bool:
    """True if the multiplicity stored at ``path`` still splits the two criteria."""
    m = multiplicity_from_json(json.loads(Path(path).read_text()))
    return criterion2(m).passed != criterion3(m).passed


# --------------------------------------------------------------------------
# conjecture scan


def _conjecture_chunk(items):
    n = items[0][0]
    out = []
    for _, vec, members in items:
        m = MultiBraid.from_edge_vector(n, vec)
        v = decide(m)
        if not verify_verdict(m, v):
            raise AssertionError(f"certificate failed to re-verify for {vec}")
        statuses = {v.status}
        for other in members:
            statuses.add(decide(MultiBraid.from_edge_vector(n, other)).status)
        out.append((vec, v, statuses))
    return out


def conjecture_scan(cfg: SweepConfig, out: str | os.PathLike | None = None, check_classes: bool = True) -> SweepReport:
    """Classify every multiplicity in the box and catalogue the Unknown ones.

    Instances are grouped by vertex relabelling and one representative per
    class is decided.  With ``check_classes`` every other member is decided
    too and the class must be uniform.
    """
    cfg.check_budget()
    n = cfg.vertex_count
    report = SweepReport("conjecture", details={"ell": cfg.ell, "max_mult": cfg.max_mult})
    start = time.perf_counter()
    classes = {}
    if cfg.sample_count is None:
        source = product(range(1, cfg.max_mult + 1), repeat=comb(n, 2))
    else:
        rng = random.Random(cfg.seed)
        source = (
            tuple(rng.randint(1, cfg.max_mult) for _ in range(comb(n, 2))) for _ in range(cfg.sample_count)
        )
    for vec in source:
        report.instances += 1
        key = canonical_relabelling(MultiBraid.from_edge_vector(n, vec))
        classes.setdefault(key, []).append(vec)
    items = [(n, key, members[1:] if check_classes else []) for key, members in sorted(classes.items())]
    tally = {s.value: 0 for s in Status}
    unknown = []
    for chunk in _chunked_map(_conjecture_chunk, items):
        for vec, verdict, statuses in chunk:
            if len(statuses) > 1:
                raise AssertionError(f"relabelled copies of {vec} received different verdicts")
            tally[verdict.status.value] += 1
            if verdict.status is Status.UNKNOWN:
                unknown.append((vec, verdict))
    lines = []
    for vec, verdict in unknown:
        m = MultiBraid.from_edge_vector(n, vec)
        lines.append(json.dumps({"multiplicity": multiplicity_to_json(m), "verdict": verdict_to_json(verdict)}, sort_keys=True))
    if out is not None:
        Path(out).write_text("".join(line + "\n" for line in lines))
    report.details.update(classes=len(classes), by_status=tally, unknown=len(unknown))
    report.details["unknown_instances"] = [list(vec) for vec, _ in unknown]
    report.elapsed = time.perf_counter() - start
    return report
