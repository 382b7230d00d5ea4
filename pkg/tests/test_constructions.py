import random

import pytest
from hypothesis import given, settings, strategies as st

from suppos.constructions import (
    S1_EXPR, Inter, InvalidExpression, Sum, Var, binom, chains_family, consecutive_kn, copolar_kn,
    diamonds_betti_formula, diamonds_depolarized, diamonds_projdim, diamonds_regularity,
    diamonds_squarefree, example_leaf_tree, k_closed_form, k_out_of_n, k_value, kn_support_family,
    leaf_ideal, lines_betti_formula, lines_depolarized, lines_sigma, lines_squarefree, parse_sp,
    random_forest, random_sp_expr, reduce_forest, reduction_stages, sp_from_forest, sp_ideal)
from suppos.monomials import Monomial, MonomialIdeal, minimalize, parse_ideal
from suppos.polarity import are_copolar
from suppos.poset import (Poset, components, disjoint_chains, diamond, is_forest, is_isomorphic,
                          leaves)
from suppos.support import (ideal_from_sigma, ordered_support_poset, support_family,
                            support_poset)

sq = MonomialIdeal.squarefree


# --- lines ----------------------------------------------------------------

def test_lines_examples():
    assert lines_squarefree(2, 2) == sq([[1, 2], [3, 4], [1, 3]], 4)
    assert lines_squarefree(3, 1) == sq([[1], [2], [3]], 3)
    assert lines_depolarized(2, 3) == parse_ideal("vars: 2\nx1^3, x2^3, x1^2*x2, x1*x2^2")
    assert lines_depolarized(3, 2) == parse_ideal("vars: 3\nx1^2, x2^2, x3^2, x1*x2, x1*x3")
    assert lines_depolarized(4, 1) == sq([[1], [2], [3], [4]], 4)
    with pytest.raises(ValueError):
        lines_squarefree(1, 3)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_lines_support_poset_is_disjoint_chains(n, m):
    I = lines_squarefree(n, m)
    assert len(I) == n + (n - 1) * (m - 1)
    assert is_isomorphic(support_poset(I), disjoint_chains(n, m))
    assert support_family(I) == chains_family(n, m)
    assert ideal_from_sigma(chains_family(n, m), lines_sigma(n, m)) == I
    assert are_copolar(lines_depolarized(n, m), I)


def test_lines_formula_values():
    assert [lines_betti_formula(2, 2, i) for i in range(3)] == [3, 2, 0]
    assert lines_betti_formula(3, 3, 1) == 9
    assert lines_betti_formula(5, 2, 5) == 0


# --- diamonds -------------------------------------------------------------

def test_diamonds_examples():
    I2 = diamonds_squarefree(2)
    assert len(I2) == 4 and I2.n == 8
    assert diamonds_depolarized(2) == parse_ideal(
        "vars: 4\nx1^3*x2, x3^3*x4, x1^2*x3*x4, x3^2*x1*x2")
    for m in (2, 3, 5):
        D = diamonds_depolarized(m)
        assert len(D) == 2 * m and all(g.degree == 4 for g in D.gens)
    fam = support_family(diamonds_squarefree(3))
    for i in range(3):
        assert fam[4 * i + 4] == frozenset(range(4 * i + 1, 4 * i + 5))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_diamonds_support_poset(m):
    P = support_poset(diamonds_squarefree(m))
    want = diamond(1, 2, 3, 4)
    for _ in range(m - 1):
        want, _ = __import__("suppos.poset", fromlist=["x"]).disjoint_union(want, diamond(1, 2, 3, 4))
    assert is_isomorphic(P, want)
    assert len(components(P)) == m


def test_k_values():
    assert k_value(4, 0, 1) == 6
    assert k_value(4, 2, 1) == 14
    assert k_value(4, 1, 0) == 5
    for m in range(2, 7):
        for a in range(m + 1):
            for b in range(m + 1):
                assert k_value(m, a, b) == k_closed_form(m, a, b), (m, a, b)
    with pytest.raises(ValueError):
        k_value(3, -1, 0)
    with pytest.raises(ValueError):
        k_closed_form(3, 0, -1)


def test_k_recurrence():
    for m in range(2, 7):
        for a in range(2, m + 1):
            for b in range(1, m + 1):
                assert k_value(m, a, b) == k_value(m, a - 2, b - 1) + k_value(m, a - 1, b)


def test_diamonds_formula_values():
    assert diamonds_betti_formula(4, 0) == 8
    assert diamonds_betti_formula(4, 1) == 24
    assert [diamonds_betti_formula(3, i) for i in range(4)] == [6, 12, 10, 3]
    with pytest.raises(ValueError):
        diamonds_betti_formula(2, 1)
    assert diamonds_projdim(4) == 5 and diamonds_regularity(4) == 8


# --- forests and leaf ideals ----------------------------------------------

def test_leaf_ideal_example():
    I = leaf_ideal(example_leaf_tree())
    assert I == sq([[1, 2, 3, 4], [1, 2, 3, 5, 6], [1, 2, 3, 7, 8, 9], [1, 2, 3, 7, 8, 10, 11],
                    [1, 2, 3, 7, 8, 10, 12]], 12)
    assert leaf_ideal(Poset.chain([1])) == sq([[1]], 1)
    assert leaf_ideal(Poset.chain([1, 2, 3])) == sq([[1, 2, 3]], 3)


def test_reduction_stages_example():
    stages = [sorted(P.elements) for P in reduction_stages(example_leaf_tree())]
    assert stages == [list(range(1, 13)), [3, 4, 6, 8, 9, 10, 11, 12], [4, 6, 8, 9, 10, 11, 12],
                      [4, 6, 9, 10, 11, 12], [4, 6, 9, 11, 12]]
    R, merged = reduce_forest(example_leaf_tree())
    assert merged[3] == {1, 2, 3} and merged[6] == {5, 6} and merged[8] == {7, 8}


def test_reduce_trivial_cases():
    R, merged = reduce_forest(Poset.chain([1, 2, 3]))
    assert R.elements == {3} and merged[3] == {1, 2, 3}
    T = Poset.from_covers([1, 2, 3], [(1, 2), (1, 3)])
    assert reduce_forest(T)[0] == T


@settings(max_examples=60)
@given(st.integers(1, 12), st.randoms(use_true_random=False))
def test_reduced_forest_shape(n, rnd):
    F = random_forest(n, rnd)
    R, merged = reduce_forest(F)
    assert len(leaves(R)) == len(leaves(F))
    for a in R.elements:
        kids = [b for (x, b) in R.covers() if x == a]
        assert len(kids) != 1
    assert sorted(x for s in merged.values() for x in s) == list(range(1, n + 1))


@settings(max_examples=60)
@given(st.integers(1, 12), st.randoms(use_true_random=False))
def test_leaf_ideal_realizes_forest(n, rnd):
    F = random_forest(n, rnd)
    I = leaf_ideal(F)
    assert len(I) == len(leaves(F))
    assert is_isomorphic(ordered_support_poset(I), F)
    # at the level of distinct support sets, only-child chains collapse
    assert is_isomorphic(support_poset(I), reduce_forest(F)[0])
    assert sp_ideal(sp_from_forest(F), n) == I


# --- k-out-of-n -----------------------------------------------------------

def test_consecutive_kn_examples():
    assert consecutive_kn(2, 3) == sq([[1, 2], [2, 3]], 3)
    assert consecutive_kn(3, 4) == sq([[1, 2, 3], [2, 3, 4]], 4)
    assert consecutive_kn(4, 4) == sq([[1, 2, 3, 4]], 4)
    with pytest.raises(ValueError):
        consecutive_kn(5, 4)


def test_kn_family_examples():
    assert kn_support_family(2, 5)[3] == {3}
    fam = kn_support_family(3, 4)
    assert fam[2] == fam[3] == {2, 3}
    assert all(kn_support_family(1, 5)[i] == {i} for i in range(1, 6))


def test_kn_family_closed_form():
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert kn_support_family(k, n) == support_family(consecutive_kn(k, n)), (k, n)


def test_k_out_of_n():
    assert k_out_of_n(2, 3) == sq([[1, 2], [1, 3], [2, 3]], 3)
    assert len(k_out_of_n(3, 6)) == 20
    assert k_out_of_n(4, 4) == sq([[1, 2, 3, 4]], 4)
    for n in range(2, 7):
        for k in range(1, n):
            P = support_poset(k_out_of_n(k, n))
            assert len(P) == n and not P.covers()


def _transcribed_generators(k, n):
    """Generator list transcribed pattern by pattern; meaningful when 3k > n."""
    mid = n - 2 * k
    N = 2 + mid

    def mono(a, bs, c):
        e = [0] * N
        e[0] = a
        for j in bs:
            e[j] = 1
        e[-1] = c
        return Monomial(tuple(e))

    gens = [mono(k - s, range(1, s + 1), 0) for s in range(mid + 1)]
    gens += [mono(3 * k - n - r, range(1, mid + 1), r) for r in range(1, 3 * k - n)]
    gens += [mono(0, range(s, mid + 1), 3 * k - n + s - 1) for s in range(1, mid + 2)]
    return minimalize(gens, N)


def test_copolar_kn_examples():
    assert copolar_kn(3, 4) == parse_ideal("vars: 2\nx1^3, x1^2*x2")
    assert copolar_kn(2, 3) == parse_ideal("vars: 2\nx1^2, x1*x2")
    assert copolar_kn(4, 6) == parse_ideal("vars: 2\nx1^4, x1^3*x2, x1^2*x2^2")


def test_copolar_kn_matches_transcription():
    for n in range(2, 12):
        for k in range(1, n + 1):
            if k < n - k + 1 and 3 * k > n:
                assert copolar_kn(k, n) == _transcribed_generators(k, n), (k, n)


def test_copolar_kn_is_copolar():
    for n in range(2, 8):
        for k in range(2, n + 1):
            J = copolar_kn(k, n)
            assert J.n == (2 if k >= n - k + 1 else 2 + n - 2 * k)
            assert are_copolar(J, consecutive_kn(k, n)), (k, n)


def test_leaf_ideal_of_kn_poset_differs():
    witnesses = []
    for n in range(2, 8):
        for k in range(1, n + 1):
            J = consecutive_kn(k, n)
            P = ordered_support_poset(J)
            assert is_forest(P)
            L = leaf_ideal(P)
            assert is_isomorphic(ordered_support_poset(L), P)
            if L != J:
                witnesses.append((k, n))
    assert (2, 4) in witnesses and (3, 5) in witnesses


# --- series-parallel ------------------------------------------------------

def test_parse_sp():
    e = parse_sp(S1_EXPR)
    assert e == Inter(Inter(Var(1), Sum(Inter(Var(2), Var(3)), Var(4))),
                      Inter(Var(5), Sum(Inter(Var(6), Var(7)), Var(8))))
    assert parse_sp(str(e)) == e
    assert parse_sp("1 + 2 * 3") == Sum(Var(1), Inter(Var(2), Var(3)))
    for bad in ["", "1 +", "(1", "1 2", "a", "1 * (2 + )"]:
        with pytest.raises(InvalidExpression):
            parse_sp(bad)


def test_sp_examples():
    assert sp_ideal(Var(1)) == sq([[1]], 1)
    S1 = sp_ideal(parse_sp(S1_EXPR))
    assert S1 == sq([[1, 2, 3, 5, 6, 7], [1, 2, 3, 5, 8], [1, 4, 5, 6, 7], [1, 4, 5, 8]], 8)
    with pytest.raises(InvalidExpression):
        sp_ideal(parse_sp("1 * 1"))


def test_sp_non_uniqueness():
    S1 = sp_ideal(parse_sp(S1_EXPR))
    F = ordered_support_poset(S1, [1, 5, 2, 3, 6, 7])
    S2 = sp_ideal(sp_from_forest(F))
    assert S2 == sq([[1, 2, 3, 5], [1, 4, 5], [1, 5, 8], [1, 5, 6, 7]], 8)
    assert S2 == leaf_ideal(F)
    assert S1 != S2
    assert support_poset(S1) == support_poset(S2)


def test_sp_from_forest_small():
    assert sp_from_forest(Poset.chain([1, 2])) == Inter(Var(1), Var(2))
    assert sp_from_forest(Poset.chain([1])) == Var(1)


def test_random_sp_expr_replays():
    a = random_sp_expr(8, random.Random(5))
    assert a == random_sp_expr(8, random.Random(5))
    assert sorted(__import__("suppos.constructions", fromlist=["x"]).sp_variables(a)) == list(range(1, 9))


def test_sp_support_posets_are_forests():
    rng = random.Random(77)
    for _ in range(200):
        e = random_sp_expr(rng.randint(1, 8), rng)
        I = sp_ideal(e)
        assert is_forest(support_poset(I)), str(e)
        assert parse_sp(str(e)) == e
