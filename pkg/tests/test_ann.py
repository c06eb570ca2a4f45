from itertools import combinations

import pytest
from hypothesis import given

from braidfree.ann import (
    AnnDecomposition,
    ann_decompose,
    ann_decompose_oracle,
    base_decompose_triangle,
    eps_graph,
    four_cycle_bound_holds,
    verify_decomposition,
    windowed_search,
)
from braidfree.arrangement import MultiBraid, deviation, enumerate_balanced, is_balanced, odd_triangle_count, restrict
from braidfree.errors import NotAnn, NotBalanced, SizeMismatch
from braidfree.families import hidden_witness, two_paths

from conftest import balanced_multiplicities, box

# balanced on five vertices, decomposable, yet the textbook repair moves stall
STALLS_WITHOUT_FALLBACK = (1, 1, 3, 1, 2, 2, 1, 2, 3, 1)


def meets_hypothesis(m):
    return all(
        deviation(m, U) <= 3 * odd_triangle_count(m, U) for U in combinations(range(m.vertex_count), 4)
    )


class TestBaseCase:
    @pytest.mark.parametrize(
        "edges,n",
        [((1, 1, 1), (1, 1, 1)), ((2, 2, 2), (1, 1, 1)), ((3, 1, 3), (1, 3, 1)), ((5, 3, 3), (3, 3, 1))],
    )
    def test_ceiling_offsets(self, edges, n):
        m = MultiBraid.from_edge_vector(3, edges)
        d = base_decompose_triangle(m)
        assert d.n == n
        assert verify_decomposition(m, d)

    def test_unbalanced(self):
        with pytest.raises(NotBalanced):
            base_decompose_triangle(MultiBraid.from_edge_vector(3, (5, 1, 1)))

    def test_wrong_size(self):
        with pytest.raises(SizeMismatch):
            base_decompose_triangle(MultiBraid.constant(4, 1))

    def test_every_balanced_triangle(self):
        for m in enumerate_balanced(3, 12):
            assert verify_decomposition(m, base_decompose_triangle(m))


class TestDecompose:
    def test_constant_two_on_k4(self):
        m = MultiBraid.constant(4, 2)
        d = ann_decompose(m)
        assert verify_decomposition(m, d)

    def test_hidden_witness(self):
        m = hidden_witness()
        assert verify_decomposition(m, ann_decompose(m))

    def test_two_vertices(self):
        m = MultiBraid.constant(2, 4)
        assert verify_decomposition(m, ann_decompose(m))

    def test_not_ann(self):
        # outside the balanced cone: 2 n_0 would have to be negative
        m = two_paths(1, 4)
        assert not is_balanced(m)
        with pytest.raises(NotAnn):
            ann_decompose(m)
        with pytest.raises(NotAnn):
            ann_decompose_oracle(m)

    def test_unbalanced_base_with_fallback(self):
        # vertices 0,1,2 are unbalanced but the whole thing still decomposes
        m = MultiBraid.from_edge_vector(4, (4, 1, 2, 1, 2, 1))
        assert not is_balanced(restrict(m, (0, 1, 2)))
        ann_decompose_oracle(m)
        assert verify_decomposition(m, ann_decompose(m))
        with pytest.raises(NotAnn):
            ann_decompose(m, fallback=False)

    def test_repair_without_fallback_is_incomplete(self):
        m = MultiBraid.from_edge_vector(5, STALLS_WITHOUT_FALLBACK)
        assert is_balanced(m)
        assert not meets_hypothesis(m)
        with pytest.raises(NotAnn):
            ann_decompose(m, fallback=False)
        assert verify_decomposition(m, ann_decompose(m))

    def test_oracle_completeness_balanced_triangles_and_k4(self):
        for n, top in ((3, 5), (4, 4)):
            for m in enumerate_balanced(n, top):
                try:
                    ann_decompose_oracle(m)
                except NotAnn:
                    with pytest.raises(NotAnn):
                        ann_decompose(m)
                    continue
                assert verify_decomposition(m, ann_decompose(m))

    def test_agrees_with_oracle_on_box(self):
        for m in box(4, 4):
            try:
                ann_decompose_oracle(m)
                expected = True
            except NotAnn:
                expected = False
            found = windowed_search(m)
            assert (found is not None) == expected
            if found is not None:
                assert verify_decomposition(m, found)

    def test_hypothesis_guarantee_exhaustive(self):
        # balanced inputs meeting the four-subset hypothesis always decompose,
        # without help from the fallback
        checked = 0
        for n, top in ((4, 4), (5, 2)):
            for m in enumerate_balanced(n, top):
                if meets_hypothesis(m):
                    checked += 1
                    assert verify_decomposition(m, ann_decompose(m, fallback=False))
        assert checked > 1000

    @given(balanced_multiplicities(min_vertices=4, max_vertices=7, max_m=15))
    def test_hypothesis_guarantee_random(self, m):
        if meets_hypothesis(m):
            assert verify_decomposition(m, ann_decompose(m, fallback=False))

    @given(balanced_multiplicities(min_vertices=3, max_vertices=6, max_m=15))
    def test_fallback_agrees_with_window_search(self, m):
        found = windowed_search(m)
        try:
            d = ann_decompose(m)
        except NotAnn:
            assert found is None
        else:
            assert found is not None and verify_decomposition(m, d)
        # alternating eps sums bound every four-cycle value by 4
        if found is not None:
            ok, hit = four_cycle_bound_holds(m)
            assert ok or hit[1] <= 4


class TestVerify:
    def test_accepts_and_rejects(self):
        m = MultiBraid.constant(3, 2)
        good = AnnDecomposition.from_items((1, 1, 1), [(0, 1, 0), (0, 2, 0), (1, 2, 0)])
        assert verify_decomposition(m, good)
        wrong_sum = AnnDecomposition.from_items((1, 1, 0), [(0, 1, 0), (0, 2, 0), (1, 2, 0)])
        assert not verify_decomposition(m, wrong_sum)
        big_eps = AnnDecomposition.from_items((0, 0, 0), [(0, 1, 2), (0, 2, 2), (1, 2, 2)])
        assert not verify_decomposition(m, big_eps)
        negative = AnnDecomposition.from_items((3, -1, -1), [(0, 1, 0), (0, 2, 0), (1, 2, 4)])
        assert not verify_decomposition(m, negative)

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            verify_decomposition(MultiBraid.constant(4, 2), AnnDecomposition.from_items((1, 1, 1), []))


def test_eps_graph_signs():
    d = AnnDecomposition.from_items((1, 1, 1), [(0, 1, 1), (0, 2, -1), (1, 2, 0)])
    G = eps_graph(d)
    assert G.plus_edges == {(0, 1)} and G.minus_edges == {(0, 2)}


def test_spec_triangle_example():
    m = MultiBraid.from_edge_vector(3, (1, 2, 2))
    d = base_decompose_triangle(m)
    assert d.n == (1, 1, 2)
    assert [e for _, _, e in d.eps_items()] == [-1, -1, -1]
    assert [e for _, _, e in base_decompose_triangle(MultiBraid.constant(3, 1)).eps_items()] == [-1, -1, -1]


def test_four_cycle_witness():
    ok, (cycle, value) = four_cycle_bound_holds(two_paths(1, 4))
    assert not ok and value == 6 and cycle == (0, 1, 3, 2)
    assert four_cycle_bound_holds(two_paths(1, 2)) == (True, None)


def all_decompositions(m):
    k, r = m.vertex_count, m.rows
    top = max(v for _, _, v in m.edges()) + 1
    n = [0] * k

    def search(pos):
        if pos == k:
            yield AnnDecomposition.from_items(
                tuple(n), [(i, j, r[i][j] - n[i] - n[j]) for i, j in combinations(range(k), 2)]
            )
            return
        for v in range(top + 1):
            if all(-1 <= r[i][pos] - n[i] - v <= 1 for i in range(pos)):
                n[pos] = v
                yield from search(pos + 1)

    return list(search(0))


def test_eliminability_does_not_depend_on_decomposition():
    from braidfree.signed_graph import is_eliminable

    several = 0
    for m in enumerate_balanced(4, 4):
        ds = all_decompositions(m)
        several += len(ds) > 1
        assert len({is_eliminable(eps_graph(d)).eliminable for d in ds}) <= 1
    assert several > 0
