import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from sandwich import engine, variant
from sandwich.core import (
    SandwichElement,
    Transformation,
    all_transformations,
    compose,
    idempotents_of_degree,
    kernel_key,
    permutations,
    rank,
)
from sandwich.variant import classify_P, d_order_leq, star

T = Transformation
S1233 = SandwichElement("[1,2,3,3]")


def idempotent_sandwiches(n):
    return [SandwichElement(a) for a in idempotents_of_degree(n) if 1 <= rank(a) < n]


class TestStar:
    def test_examples(self):
        assert star(T([2, 4, 2, 4]), T([2, 4, 2, 4]), S1233) == T([4, 2, 4, 2])
        assert star(S1233.a, S1233.a, S1233) == S1233.a

    @given(st.lists(st.integers(1, 4), min_size=4, max_size=4), st.lists(st.integers(1, 4), min_size=4, max_size=4))
    def test_unit_variant_is_composition(self, f, g):
        f, g = T(f), T(g)
        assert star(f, g, T.identity(4)) == compose(f, g)

    def test_non_idempotent_sandwich_allowed(self):
        assert star(T([1, 2]), T([1, 2]), T([2, 1])) == T([2, 1])

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            star(T([1, 2]), T([1, 2, 3]), S1233)


class TestNormalize:
    def test_examples(self):
        s, p = variant.normalize_sandwich(T([1, 1, 2, 2]))
        assert s.a == T([1, 1, 3, 3]) and p == T([1, 3, 2, 4])
        s, p = variant.normalize_sandwich(T([1, 2, 3, 3]))
        assert s.a == T([1, 2, 3, 3]) and p == T.identity(4)
        s, p = variant.normalize_sandwich(T([2, 2]))
        assert s.a == T([1, 1]) and p == T([2, 1])

    @pytest.mark.parametrize("b", ["[2,3,3,1]", "[4,4,4,4]", "[3,1,2]", "[2,2,1]"])
    def test_isomorphism(self, b):
        b = T.parse(b)
        s, p = variant.normalize_sandwich(b)
        assert p.is_permutation() and compose(b, p).is_idempotent()
        # x -> p x carries the bp-product to the b-product
        rng = random.Random(1)
        U = list(all_transformations(len(b)))
        for _ in range(200):
            x, y = rng.choice(U), rng.choice(U)
            assert compose(p, star(x, y, s.a)) == star(compose(p, x), compose(p, y), b)


class TestClassify:
    def test_examples(self):
        c = classify_P(T([1, 1, 3, 3]), S1233)
        assert (c.in_P1, c.in_P2) == (True, True)
        c = classify_P(T([3, 4, 3, 4]), S1233)
        assert (c.in_P1, c.in_P2) == (False, True)
        c = classify_P(T([2, 3, 4, 1]), S1233)
        assert (c.in_P1, c.in_P2) == (False, False)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_characterisations_agree(self, n):
        # classify_P asserts the rank equalities internally
        for s in idempotent_sandwiches(n)[:12]:
            for f in all_transformations(n):
                c = classify_P(f, s)
                if rank(f) > s.r:
                    assert not c.in_P1 and not c.in_P2

    @pytest.mark.parametrize("s", idempotent_sandwiches(4)[::5], ids=str)
    def test_p_is_regular_set_and_subsemigroup(self, s):
        S = variant.variant_table(s)
        reg = {S.elements[x] for x in engine.regular_elements(S)}
        P = {f for f in S.elements if variant.in_P(f, s)}
        assert reg == P
        for f, g in itertools.product(sorted(P)[:40], sorted(P)):
            assert star(f, g, s) in P

    @pytest.mark.parametrize("s", idempotent_sandwiches(4)[::4], ids=str)
    def test_p1_closed_under_l_and_p2_under_r(self, s):
        U = list(all_transformations(4))
        by_image: dict = {}
        by_kernel: dict = {}
        for f in U:
            by_image.setdefault(frozenset(f), []).append(f)
            by_kernel.setdefault(kernel_key(f), []).append(f)
        for f in U:
            if variant.in_P1(f, s):
                assert all(variant.in_P1(g, s) for g in by_image[frozenset(f)])
            if variant.in_P2(f, s):
                assert all(variant.in_P2(g, s) for g in by_kernel[kernel_key(f)])


class TestGreenFormula:
    def test_examples(self):
        # rank 3, with neither image separated nor kernel saturated
        assert variant.variant_case(T([3, 4, 4, 1]), S1233) == "singleton"
        assert variant.variant_green_class(T([3, 4, 4, 1]), S1233, "D") == [T([3, 4, 4, 1])]
        H = variant.variant_green_class(T([1, 1, 3, 3]), S1233, "H")
        assert sorted(H) == [T([1, 1, 3, 3]), T([3, 3, 1, 1])]
        for f in permutations(4):
            for rel in "RLHD":
                assert variant.variant_green_class(f, S1233, rel) == [f]

    def test_unknown_relation(self):
        with pytest.raises(ValueError):
            variant.variant_green_class(S1233.a, S1233, "J")

    def test_nonregular_h_classes_trivial(self):
        S = variant.variant_table(S1233)
        G = engine.green_classes(S)
        for x, f in enumerate(S.elements):
            if not variant.in_P(f, S1233):
                assert G.class_of(x, "H") == [x]
                assert not G.h_is_group[G.h_ids[x]]

    @pytest.mark.parametrize("a", ["[1,1,3]", "[1,1,1]", "[1,2,2,2]", "[1,2,3,3]"])
    def test_matches_oracle(self, a):
        s = SandwichElement(a)
        S = variant.variant_table(s)
        G = engine.green_classes(S)
        for rel in "RLHD":
            oracle = {frozenset(S.elements[x] for x in c) for c in G.classes(rel)}
            formula = {frozenset(c) for c in variant.variant_green_partition(s, rel)}
            assert oracle == formula, rel


class TestDOrder:
    def test_fragmented_class_position(self):
        s = SandwichElement("[1,1,1,4,5]")
        f = T([1, 2, 3, 1, 1])
        assert variant.variant_case(f, s) == "singleton"
        g3 = next(g for g in all_transformations(5) if rank(g) == 3 and variant.in_P(g, s))
        g2 = next(g for g in all_transformations(5) if rank(g) == 2 and variant.in_P(g, s))
        g1 = T([1, 1, 1, 1, 1])
        assert d_order_leq(f, g3, s)
        assert not d_order_leq(g2, f, s)
        assert d_order_leq(g1, f, s)

    def test_reflexive(self):
        for f in [T([2, 3, 1, 1]), S1233.a, T([1, 1, 1, 1])]:
            assert d_order_leq(f, f, S1233)

    def test_high_rank_maximal(self):
        rng = random.Random(3)
        U = list(all_transformations(4))
        for f in permutations(4):
            for g in rng.sample(U, 40):
                if g != f:
                    assert not d_order_leq(f, g, S1233)

    @pytest.mark.parametrize("a", ["[1,2,3,3]", "[1,1,3,3]"])
    def test_matches_oracle(self, a):
        s = SandwichElement(a)
        S = variant.variant_table(s)
        G = engine.green_classes(S)
        rng = random.Random(7)
        N = len(S)
        for _ in range(3000):
            i, j = rng.randrange(N), rng.randrange(N)
            expect = bool(G.d_leq[G.d_ids[i], G.d_ids[j]])
            assert d_order_leq(S.elements[i], S.elements[j], s) == expect


class TestRankAndCensus:
    def test_rank_formula(self):
        assert variant.rank_variant_formula(4, 3) == 24
        assert variant.rank_variant_formula(3, 1) == 24
        assert variant.rank_variant_formula(5, 3) == 1320
        with pytest.raises(ValueError):
            variant.rank_variant_formula(4, 4)

    def test_min_generating_set(self):
        M = variant.unique_min_generating_set(S1233)
        assert sorted(M) == sorted(permutations(4))
        assert len(engine.transformation_closure(M, S1233.a)) == 256
        s = SandwichElement("[1,1,1]")
        M = variant.unique_min_generating_set(s)
        assert len(M) == 24 and len(engine.transformation_closure(M, s.a)) == 27
        assert len(variant.unique_min_generating_set(SandwichElement("[1,1,1,4]"))) == 168

    @pytest.mark.parametrize("a,value", [("[1,2,3,3]", 12), ("[1,1,1,4]", 72), ("[1,2,3,3,3]", 288)])
    def test_census(self, a, value):
        s = SandwichElement(a)
        assert variant.count_maximal_above_top_regular(s) == value
        assert variant.count_maximal_above_top_regular_bruteforce(s) == value

    @pytest.mark.parametrize("s", idempotent_sandwiches(3) + idempotent_sandwiches(4)[::3], ids=str)
    def test_no_identity(self, s):
        assert not variant.is_variant_monoid_bruteforce(s)

    def test_unit_variant_is_monoid(self):
        assert variant.is_variant_monoid_bruteforce(T.identity(3))
