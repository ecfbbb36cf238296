import numpy as np
import pytest

from sandwich import engine
from sandwich.core import SandwichElement, Transformation, all_transformations, compose, rank
from sandwich.regular import enumerate_reg
from sandwich.variant import star, variant_table

T = Transformation


def tn(n):
    return engine.transformation_table(list(all_transformations(n)))


class TestClosure:
    def test_t3_from_symmetric_group_and_rank_two(self):
        S = engine.closure([T([2, 3, 1]), T([2, 1, 3]), T([1, 1, 2])], compose)
        assert len(S) == 27

    def test_idempotent_alone(self):
        assert len(engine.closure([T([1, 1, 3])], compose)) == 1

    def test_t2(self):
        assert len(engine.closure([T([2, 1]), T([1, 1])], compose)) == 4

    def test_order_is_deterministic(self):
        gens = [T([2, 3, 1]), T([2, 1, 3]), T([1, 1, 2])]
        a = engine.closure(gens, compose).elements
        b = engine.closure(gens, compose).elements
        assert a == b
        assert a[:3] == gens

    def test_duplicates_in_generators(self):
        S = engine.closure([T([2, 1]), T([2, 1])], compose)
        assert len(S) == 2

    def test_cap(self):
        with pytest.raises(engine.SizeLimitError):
            engine.closure([T([2, 3, 1]), T([2, 1, 3]), T([1, 1, 2])], compose, cap=10)

    def test_empty(self):
        with pytest.raises(ValueError):
            engine.closure([], compose)

    def test_fast_closure_matches_generic(self):
        a = T([1, 2, 3, 3])
        gens = [T([2, 1, 3, 2]), T([1, 1, 3, 3]), T([4, 3, 2, 1])]
        slow = engine.closure(gens, lambda f, g: star(f, g, a))
        fast = engine.transformation_closure(gens, a)
        assert set(slow.elements) == set(fast)
        assert len(fast) == len(set(fast))

    def test_table_matches_product(self):
        a = T([1, 1, 3])
        U = list(all_transformations(3))
        S = engine.transformation_table(U, a)
        for i in range(0, 27, 5):
            for j in range(0, 27, 7):
                assert S.elements[S.mul(i, j)] == star(U[i], U[j], a)


class TestAssociativity:
    def test_detects_bad_table(self):
        # x*y = x - y mod 3 is not associative
        table = np.array([[(i - j) % 3 for j in range(3)] for i in range(3)])
        S = engine.SemigroupTable([0, 1, 2], table)
        with pytest.raises(engine.NotAssociativeError):
            S.check_associative(full=True)
        with pytest.raises(engine.NotAssociativeError):
            S.check_associative(samples=500)

    def test_full_check_limit(self):
        with pytest.raises(engine.SizeLimitError):
            engine.right_zero(301).check_associative(full=True)

    def test_variant_passes(self):
        S = variant_table("[1,2,3]")
        S.check_associative(full=True)

    def test_rejects_unclosed(self):
        with pytest.raises(ValueError):
            engine.SemigroupTable.from_product([T([2, 1]), T([1, 1])], compose)


class TestGreen:
    def test_t3_d_class_sizes(self):
        S = tn(3)
        G = engine.green_classes(S)
        sizes = {rank(S.elements[c[0]]): len(c) for c in G.classes("D")}
        assert sizes == {3: 6, 2: 18, 1: 3}

    def test_trivial(self):
        S = engine.SemigroupTable(["e"], np.zeros((1, 1), dtype=int))
        G = engine.green_classes(S)
        assert G.n_d == 1 and bool(G.h_is_group[0])

    def test_t4_chain(self):
        S = tn(4)
        G = engine.green_classes(S)
        assert G.n_d == 4
        ranks = [rank(S.elements[c[0]]) for c in G.classes("D")]
        order = sorted(range(4), key=lambda d: ranks[d])
        for i in range(4):
            for j in range(4):
                assert bool(G.d_leq[order[i], order[j]]) == (i <= j)

    @pytest.mark.parametrize("a", ["[1,2,3,3]", "[1,1,3,3]", "[1,1,1,4]", "[1,1,1,1]"])
    def test_structural_invariants(self, a):
        S = variant_table(a)
        G = engine.green_classes(S)
        pairs = set(zip(G.r_ids.tolist(), G.l_ids.tolist()))
        assert len(pairs) == int(G.h_ids.max()) + 1
        for d in range(G.n_d):
            xs = np.nonzero(G.d_ids == d)[0]
            for ids in (G.r_ids, G.l_ids):
                for c in set(ids[xs].tolist()):
                    assert set(np.nonzero(ids == c)[0].tolist()) <= set(xs.tolist())
        idem = set(engine.idempotents(S))
        for h in range(len(G.h_is_group)):
            xs = set(np.nonzero(G.h_ids == h)[0].tolist())
            assert bool(G.h_is_group[h]) == bool(xs & idem)

    @pytest.mark.parametrize("a", ["[1,2,3,3]", "[1,1,1,4]", "[1,2,2]"])
    def test_regular_d_classes_form_chain(self, a):
        G = engine.green_classes(variant_table(a))
        reg = [d for d in range(G.n_d) if G.is_regular_d(d)]
        for x in reg:
            for y in reg:
                assert G.d_leq[x, y] or G.d_leq[y, x]

    def test_ids_are_deterministic(self):
        G1 = engine.green_classes(variant_table("[1,2,3,3]"))
        G2 = engine.green_classes(variant_table("[1,2,3,3]"))
        assert (G1.d_ids == G2.d_ids).all() and (G1.h_ids == G2.h_ids).all()


class TestRegularIdempotent:
    def test_t3_all_regular(self):
        assert len(engine.regular_elements(tn(3))) == 27

    def test_variant_counts(self):
        S = variant_table("[1,2,3,3]")
        assert len(engine.regular_elements(S)) == 100
        assert len(engine.idempotents(S)) == 30

    def test_right_zero(self):
        S = engine.right_zero(3)
        assert engine.regular_elements(S) == [0, 1, 2]

    def test_t2_idempotents(self):
        S = tn(2)
        assert sorted(S.elements[x] for x in engine.idempotents(S)) == [T([1, 1]), T([1, 2]), T([2, 2])]

    def test_group_has_one_idempotent(self):
        S = engine.closure([T([2, 3, 1])], compose)
        assert len(engine.idempotents(S)) == 1

    def test_regular_set_equals_rank_predicate(self):
        s = SandwichElement("[1,1,3,3]")
        S = variant_table(s)
        assert {S.elements[x] for x in engine.regular_elements(S)} == set(enumerate_reg(s))


class TestGenerating:
    def test_trivial_cases(self):
        S = tn(2)
        assert engine.is_generating(S, range(len(S)))
        assert not engine.is_generating(S, [])
        assert not engine.is_generating(S, [S.index[T([1, 1])]])

    def test_right_zero_rank(self):
        assert engine.min_rank_exhaustive(engine.right_zero(3), 3) == 3

    def test_t3_rank(self):
        assert engine.min_rank_exhaustive(tn(3), 3) == 3

    def test_reg_rank_small(self):
        s = SandwichElement("[1,1,1,4]")
        S = engine.transformation_table(enumerate_reg(s), s.a)
        assert engine.min_rank_exhaustive(S, 5) == 5

    def test_subset_guard(self):
        with pytest.raises(engine.SizeLimitError):
            engine.min_rank_exhaustive(tn(3), 3, max_subsets=10)

    def test_time_budget(self):
        S = tn(3)
        with pytest.raises(engine.SearchBudgetExceeded):
            list(engine.generating_subsets(S, 3, prune=False, time_budget=0.0))

    def test_pruning_does_not_lose_sets(self):
        S = tn(3)
        with_prune = list(engine.generating_subsets(S, 3))
        without = list(engine.generating_subsets(S, 3, prune=False))
        assert with_prune == without and with_prune


class TestGuard:
    def test_default(self, monkeypatch):
        monkeypatch.delenv("SANDWICH_MAX_N", raising=False)
        assert engine.max_degree() == 5
        with pytest.raises(engine.SizeLimitError):
            engine.check_enumerable(6)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("SANDWICH_MAX_N", "6")
        engine.check_enumerable(6)  # allowed, with a warning
        monkeypatch.setenv("SANDWICH_MAX_N", "8")
        with pytest.raises(engine.SizeLimitError):
            engine.check_enumerable(4)
