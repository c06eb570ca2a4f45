"""The ten acceptance criteria, each timed and reported on one line."""

import random
import time
from contextlib import contextmanager

import pytest

from braidfree.arrangement import MultiBraid, deviation, enumerate_balanced, is_balanced, odd_triangle_count, sos_residual
from braidfree.arrangement import sample_balanced
from braidfree.families import hidden_witness, two_five_cycles, two_paths
from braidfree.freeness import Status, WitnessSubset, decide, decide_balanced, eliminate_free_vertex, find_free_vertices
from braidfree.signed_graph import SignedGraph, is_eliminable_bruteforce, is_eliminable_characterization
from braidfree.verify import SweepConfig, verify_equivalence, verify_structure_tables, verify_table1_catalog


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        outcome = {"detail": ""}
        ok = False
        try:
            yield outcome
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            in_time = elapsed < limit
            status = "PASS" if ok and in_time else "FAIL"
            note = outcome["detail"] or ("" if ok else "assertion failed")
            if ok and not in_time:
                note = f"over the {limit:g} s limit"
            with capsys.disabled():
                print(f"\ncriterion {number:2d} {status}: {title} [{elapsed:.2f} s] {note}")
        assert in_time, f"took {elapsed:.2f} s, limit {limit} s"

    return run


def test_criterion_01_two_paths(criterion):
    with criterion(1, "four-vertex path family", 1.0) as out:
        checked = 0
        for s in range(1, 11):
            for t in range(1, 11):
                m = two_paths(s, t)
                if not is_balanced(m):
                    continue
                checked += 1
                assert deviation(m) == 6 * (s - t) ** 2
                assert decide_balanced(m).free == (abs(s - t) <= 1)
        out["detail"] = f"{checked} balanced pairs"


def test_criterion_02_two_five_cycles(criterion):
    with criterion(2, "five-vertex two-cycle family", 1.0) as out:
        for s in range(1, 11):
            for t in range(1, 11):
                m = two_five_cycles(s, t)
                assert decide(m).free == (s == t)
                if abs(s - t) == 1:
                    assert deviation(m) == 30 and odd_triangle_count(m) == 5
        out["detail"] = "100 pairs"


def test_criterion_03_hidden_witness(criterion):
    with criterion(3, "non-free witness on four of five vertices", 1.0) as out:
        m = hidden_witness()
        U = (0, 1, 3, 4)
        assert deviation(m) == 16 and odd_triangle_count(m) == 4
        assert deviation(m, U) == 8 and odd_triangle_count(m, U) == 0
        v = decide(m)
        assert v.status is Status.NOT_FREE
        assert isinstance(v.certificate, WitnessSubset) and v.certificate.subset == U
        out["detail"] = "witness {0,1,3,4}"


def test_criterion_04_sos_identity(criterion):
    with criterion(4, "sum-of-squares identity", 30.0) as out:
        exhaustive = 0
        for m in enumerate_balanced(4, 4):
            assert sos_residual(m) == 0
            exhaustive += 1
        rng = random.Random(4)
        for _ in range(10_000):
            m = sample_balanced(rng.randint(3, 9), 50, rng)
            assert sos_residual(m) == 0
        out["detail"] = f"{exhaustive} exhaustive + 10000 random, residual 0"


def test_criterion_05_catalog(criterion):
    with criterion(5, "four-vertex obstruction catalog", 10.0) as out:
        r = verify_table1_catalog()
        assert r.instances == 729
        assert r.passed, r.violations
        assert r.details["classes"] == 12
        out["detail"] = "12 classes, each with DV > 3q"


def test_criterion_06_eliminability_oracle(criterion):
    with criterion(6, "brute force vs characterization on five vertices", 300.0) as out:
        disagreements = 0
        for code in range(3**10):
            G = SignedGraph.from_code(5, code)
            if is_eliminable_bruteforce(G).eliminable != is_eliminable_characterization(G).eliminable:
                disagreements += 1
        assert disagreements == 0
        out["detail"] = "59049 graphs, 0 disagreements"


def test_criterion_07_structure_tables(criterion):
    with criterion(7, "cycle/mountain/hill tables", 60.0) as out:
        reports = [
            verify_structure_tables(range(3, 11), ("cycle", "mountain")),
            verify_structure_tables(range(4, 11), ("hill",)),
        ]
        violations = [v for r in reports for v in r.violations]
        out["detail"] = f"{len(violations)} violations"
        assert not violations, sorted({(v["check"], v.get("structure"), v.get("ell")) for v in violations})


def test_criterion_08_equivalence(criterion):
    with criterion(8, "deviation criterion vs eliminability criterion", 600.0) as out:
        total = 0
        for cfg in (SweepConfig(3, 4), SweepConfig(4, 3)):
            r = verify_equivalence(cfg)
            assert r.passed, r.violations[:3]
            total += r.instances
        out["detail"] = f"{total} balanced instances, 0 disagreements"


def _with_free_vertex(rng):
    while True:
        n = rng.randint(4, 7)
        if rng.random() < 0.5:
            m = sample_balanced(n, rng.randint(2, 8), rng)
        else:
            top = rng.choice((2, 3, 5))
            m = MultiBraid.from_edge_vector(n, [rng.randint(1, top) for _ in range(n * (n - 1) // 2)])
        free = find_free_vertices(m)
        if free:
            return m, free


def test_criterion_09_free_vertex_invariance(criterion):
    with criterion(9, "status unchanged by removing a free vertex", 60.0) as out:
        rng = random.Random(9)
        for _ in range(1000):
            m, free = _with_free_vertex(rng)
            v = rng.choice(free)
            assert decide(m).status == decide(eliminate_free_vertex(m, v)).status
        out["detail"] = "1000 instances"


def test_criterion_10_constants(criterion):
    with criterion(10, "constant multiplicities are free", 1.0) as out:
        for c in range(1, 11):
            for ell in range(1, 9):
                m = MultiBraid.constant(ell + 1, c)
                assert deviation(m) == 0
                assert decide(m).free
        out["detail"] = "c = 1..10, l = 1..8"
