import random
from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidfree.errors import BraidFreeError, IndexOutOfRange, NotAPermutation, TooLarge, TooSmall
from braidfree.signed_graph import (
    FORBIDDEN_FOUR,
    MINUS,
    PLUS,
    FOUR_VERTEX_OBSTRUCTIONS,
    SignedGraph,
    canonical_form,
    check_ordering,
    find_forbidden_four,
    find_sigma_structure,
    greedy_ordering,
    is_chordal,
    is_eliminable,
    is_eliminable_bruteforce,
    is_eliminable_characterization,
    make_hill,
    make_mountain,
    make_sigma_cycle,
    multiplicity_from_signed_graph,
    signed_stats,
)


@st.composite
def signed_graphs(draw, min_vertices=1, max_vertices=7):
    n = draw(st.integers(min_vertices, max_vertices))
    return SignedGraph.from_code(n, draw(st.integers(0, 3 ** (n * (n - 1) // 2) - 1)))


def star(n, sign=PLUS):
    return SignedGraph.from_edges(n, [(0, i) for i in range(1, n)] if sign == PLUS else [],
                                  [(0, i) for i in range(1, n)] if sign == MINUS else [])


class TestConstruction:
    def test_conflicting_signs(self):
        with pytest.raises(BraidFreeError):
            SignedGraph.from_edges(3, [(0, 1)], [(1, 0)])

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            SignedGraph.from_edges(3, [(0, 3)])

    def test_code_digits(self):
        G = SignedGraph.from_code(3, 1 + 2 * 3)
        assert G.plus_edges == {(0, 1)} and G.minus_edges == {(0, 2)}

    def test_swap_and_induced(self):
        G = make_mountain(4)
        assert G.swap().swap() == G
        assert G.swap().plus_edges == G.minus_edges
        H = G.induced((1, 2, 3))
        assert H.vertex_count == 3 and H.minus_edges == {(0, 1), (1, 2)}


class TestOrdering:
    def test_star_needs_centre_lowest(self):
        G = star(4)
        assert check_ordering(G, (0, 1, 2, 3))
        assert not check_ordering(G, (1, 2, 0, 3))

    def test_mixed_path(self):
        # i -(+)- k -(-)- j: k on top with a non-adjacent pair of opposite signs is fine,
        # but an opposite-sign edge i-j with k adjacent to one end only is not
        G = SignedGraph.from_edges(3, [(0, 2)], [(0, 1)])
        assert not check_ordering(G, (0, 1, 2))
        assert check_ordering(G, (2, 1, 0))

    def test_not_a_permutation(self):
        with pytest.raises(NotAPermutation):
            check_ordering(star(3), (0, 0, 1))

    def test_brute_force_limit(self):
        with pytest.raises(TooLarge):
            is_eliminable_bruteforce(SignedGraph.from_edges(11))

    def test_complete_one_sign(self):
        for sign in (PLUS, MINUS):
            K5 = SignedGraph.from_signs([[0 if i == j else sign for j in range(5)] for i in range(5)])
            cert = is_eliminable(K5)
            assert cert.eliminable and check_ordering(K5, cert.ordering)

    def test_five_cycle(self):
        C5 = make_sigma_cycle(4)
        assert not is_eliminable_bruteforce(C5).eliminable
        ob = is_eliminable(C5).obstruction
        assert ob.kind == "sigma-cycle" and len(ob.vertices) == 5

    def test_greedy_stuck(self):
        assert greedy_ordering(make_sigma_cycle(3)) is None

    @given(signed_graphs(max_vertices=7))
    def test_one_sign_graphs_eliminable_iff_chordal(self, G):
        plus_only = SignedGraph.from_edges(G.vertex_count, G.plus_edges | G.minus_edges)
        expected = is_chordal(range(G.vertex_count), plus_only.plus_edges)
        assert is_eliminable_bruteforce(plus_only).eliminable == expected
        assert is_eliminable(plus_only).eliminable == expected


def test_chordal_examples():
    assert is_chordal(range(4), [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    assert not is_chordal(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert is_chordal(range(3), [])


class TestStructures:
    def test_size_guards(self):
        with pytest.raises(TooSmall):
            make_mountain(2)
        with pytest.raises(TooSmall):
            make_hill(3)
        with pytest.raises(TooSmall):
            make_sigma_cycle(1)

    @pytest.mark.parametrize("ell", range(3, 9))
    @pytest.mark.parametrize("sigma", [PLUS, MINUS])
    def test_self_detection(self, ell, sigma):
        builders = [("sigma-cycle", make_sigma_cycle), ("mountain", make_mountain)]
        if ell >= 4:
            builders.append(("hill", make_hill))
        for kind, build in builders:
            G = build(ell, sigma)
            hit = find_sigma_structure(G)
            assert hit is not None
            if ell >= 4:
                assert hit.kind == kind and hit.sign == sigma
                assert len(hit.vertices) == ell + 1
            assert not is_eliminable_bruteforce(G).eliminable
            assert not is_eliminable_characterization(G).eliminable

    @pytest.mark.parametrize("ell", range(3, 13))
    def test_stats_formulas(self, ell):
        expected = (ell * ell - 2 * ell - 3, ell**3 - 2 * ell**2 - ell + 2)
        builders = [make_sigma_cycle, make_mountain] + ([make_hill] if ell >= 4 else [])
        for build in builders:
            q, dv = signed_stats(build(ell))
            assert (q, dv) == expected
            assert dv == q * ell + 2 * (ell + 1)

    def test_hill_same_sign_count(self):
        for ell in range(4, 10):
            G = make_hill(ell)
            assert len(G.plus_edges) == 2 * ell - 3
            assert len(G.minus_edges) == ell - 2

    def test_small_structures_are_catalogued(self):
        # on four vertices the mountain is one of the listed obstructions
        assert make_mountain(3).sign_vector() in FORBIDDEN_FOUR
        assert make_sigma_cycle(3).sign_vector() in FORBIDDEN_FOUR


class TestCatalog:
    def test_twelve_classes(self):
        classes = {canonical_form(G, allow_swap=True) for G in FOUR_VERTEX_OBSTRUCTIONS}
        assert len(classes) == 12
        assert len(FORBIDDEN_FOUR) == 258

    def test_each_is_minimal_and_dv_exceeds_3q(self):
        for G in FOUR_VERTEX_OBSTRUCTIONS:
            assert not is_eliminable_bruteforce(G).eliminable
            for v in range(4):
                rest = [u for u in range(4) if u != v]
                assert is_eliminable_bruteforce(G.induced(rest)).eliminable
            q, dv = signed_stats(G)
            assert dv > 3 * q

    def test_catalog_equals_minimal_non_eliminable(self):
        minimal = set()
        for code in range(3**6):
            G = SignedGraph.from_code(4, code)
            if not is_eliminable_bruteforce(G).eliminable:
                minimal.add(G.sign_vector())
        assert minimal == FORBIDDEN_FOUR

    def test_find_forbidden_four(self):
        G = SignedGraph.from_edges(6, [(a + 2, b + 2) for a, b in FOUR_VERTEX_OBSTRUCTIONS[0].plus_edges],
                                   [(a + 2, b + 2) for a, b in FOUR_VERTEX_OBSTRUCTIONS[0].minus_edges])
        ob = find_forbidden_four(G)
        assert ob.kind == "forbidden-four" and ob.vertices == (2, 3, 4, 5)


class TestAgreement:
    @given(signed_graphs(max_vertices=7))
    def test_sign_swap_symmetry(self, G):
        assert is_eliminable(G).eliminable == is_eliminable(G.swap()).eliminable

    @given(signed_graphs(max_vertices=6), st.data())
    def test_relabel_invariance(self, G, data):
        perm = data.draw(st.permutations(range(G.vertex_count)))
        assert is_eliminable(G).eliminable == is_eliminable(G.relabel(perm)).eliminable

    @given(signed_graphs(max_vertices=7))
    def test_certificates_are_sound(self, G):
        cert = is_eliminable(G)
        if cert.eliminable:
            assert check_ordering(G, cert.ordering)
        else:
            sub = G.induced(cert.obstruction.vertices)
            assert not is_eliminable_bruteforce(sub).eliminable

    @given(signed_graphs(max_vertices=7), st.data())
    def test_heredity(self, G, data):
        if is_eliminable(G).eliminable and G.vertex_count > 1:
            U = data.draw(st.sets(st.integers(0, G.vertex_count - 1), min_size=1))
            assert is_eliminable(G.induced(sorted(U))).eliminable

    def test_random_six_and_seven_vertices(self):
        rng = random.Random(7)
        disagreements, eliminable = 0, 0
        for k in range(10_000):
            n = 6 + k % 2
            if k % 4 < 2:
                G = SignedGraph.from_code(n, rng.randrange(3 ** (n * (n - 1) // 2)))
            else:
                # sparse half, so both answers occur often
                signs = {p: rng.choice((PLUS, MINUS)) for p in combinations(range(n), 2) if rng.random() < 0.35}
                G = SignedGraph.from_edges(n, [p for p, v in signs.items() if v == PLUS],
                                           [p for p, v in signs.items() if v == MINUS])
            brute = is_eliminable_bruteforce(G).eliminable
            eliminable += brute
            if brute != is_eliminable_characterization(G).eliminable:
                disagreements += 1
        assert disagreements == 0
        assert eliminable > 500


def test_multiplicity_from_signed_graph():
    G = make_sigma_cycle(3)
    m = multiplicity_from_signed_graph(G, (2, 2, 2, 2))
    assert m[0, 1] == 5 and m[0, 2] == 4
    with pytest.raises(BraidFreeError):
        multiplicity_from_signed_graph(G, (1, 1))
    with pytest.raises(BraidFreeError):
        multiplicity_from_signed_graph(make_sigma_cycle(3, MINUS), (0, 1, 0, 1))


def test_ordering_spec_examples():
    empty = SignedGraph.from_edges(4)
    triangle = SignedGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    square = make_sigma_cycle(3)
    assert all(check_ordering(empty, p) for p in permutations(range(4)))
    assert all(check_ordering(triangle, p) for p in permutations(range(3)))
    assert not any(check_ordering(square, p) for p in permutations(range(4)))
