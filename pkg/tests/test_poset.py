import pytest
from hypothesis import given, strategies as st

from suppos.poset import (NotAForest, Poset, components, covers, diamond, disjoint_union, format_poset,
                          is_forest, is_isomorphic, leaves, parse_poset, roots, to_dot, trunk, upper_set)
from suppos.constructions import example_leaf_tree, random_forest
from suppos.support import support_poset
from suppos.monomials import MonomialIdeal


def fig_a():
    return support_poset(MonomialIdeal.squarefree([[1, 2], [2, 4], [3], [4, 5]], 5))


def test_covers():
    assert covers(Poset.chain([1, 2, 3])) == {(1, 2), (2, 3)}
    assert covers(Poset.antichain([1, 2])) == frozenset()
    P = fig_a()
    f = frozenset
    assert covers(P) == {(f({2}), f({1, 2})), (f({4}), f({4, 5}))}
    assert f({3}) in P.elements


def test_construction_rejects_non_orders():
    with pytest.raises(ValueError):
        Poset([1, 2], [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        Poset([1, 2, 3], [(1, 2), (2, 3)])  # missing (1, 3)


def test_is_forest():
    assert is_forest(fig_a())
    assert not is_forest(diamond("a", "b", "c", "d"))
    assert is_forest(Poset([7]))


def test_leaves_roots():
    T = example_leaf_tree()
    assert leaves(T) == {4, 6, 9, 11, 12}
    assert roots(T) == {1}
    assert leaves(Poset([5])) == roots(Poset([5])) == {5}
    two, _ = disjoint_union(Poset.chain([1, 2]), Poset.chain([3, 4]))
    assert leaves(two) == {2, 4} and roots(two) == {1, 3}
    with pytest.raises(NotAForest):
        leaves(diamond(1, 2, 3, 4))


def test_trunk():
    assert trunk(Poset.chain([1, 2, 3])) == [1, 2, 3]
    assert trunk(example_leaf_tree()) == [1, 2, 3]
    assert trunk(Poset.from_covers([1, 2, 3], [(1, 2), (1, 3)])) == [1]
    with pytest.raises(NotAForest):
        trunk(Poset.antichain([1, 2]))


def test_upper_set():
    assert upper_set(Poset.chain([1, 2, 3]), 2) == Poset.chain([2, 3])
    assert upper_set(Poset.antichain([1, 2]), 1) == Poset([1])
    assert upper_set(example_leaf_tree(), 8).elements == {8, 9, 10, 11, 12}
    with pytest.raises(KeyError):
        upper_set(Poset([1]), 2)


def test_disjoint_union():
    assert disjoint_union(Poset([1]), Poset([2]))[0] == Poset.antichain([1, 2])
    assert disjoint_union(Poset.chain([1, 2]), Poset(()))[0] == Poset.chain([1, 2])
    u, mapping = disjoint_union(Poset.chain([1, 2, 3]), Poset.chain([1, 2, 3]))
    assert len(u) == 6 and len(components(u)) == 2
    assert mapping == {1: 4, 2: 5, 3: 6}
    u2, mapping = disjoint_union(Poset.chain(["a", "b"]), Poset.chain(["a", "b"]))
    assert len(u2) == 4 and is_isomorphic(u2, disjoint_union(Poset.chain([1, 2]), Poset.chain([3, 4]))[0])


def test_text_round_trip_and_dot():
    T = example_leaf_tree()
    assert parse_poset(format_poset(T)) == T
    dot = to_dot(Poset.chain([1, 2]))
    assert "rankdir=BT" in dot and dot.count("->") == 1


@given(st.integers(1, 12), st.randoms(use_true_random=False))
def test_covers_generate_the_order(n, rnd):
    F = random_forest(n, rnd)
    assert Poset.from_covers(F.elements, covers(F)) == F
    assert is_forest(F)


@given(st.integers(1, 8), st.integers(1, 8), st.randoms(use_true_random=False))
def test_forest_closed_under_disjoint_union(a, b, rnd):
    F, G = random_forest(a, rnd), random_forest(b, rnd)
    D = diamond(100, 101, 102, 103)
    assert is_forest(disjoint_union(F, G)[0])
    assert not is_forest(disjoint_union(F, D)[0])


@given(st.integers(1, 10), st.randoms(use_true_random=False))
def test_trunk_property(n, rnd):
    F = random_forest(n, rnd)
    for tree in components(F):
        ch = trunk(tree)
        for a, b in zip(ch, ch[1:]):
            assert tree.lt(a, b)
        for x in tree.elements - set(ch):
            assert all(tree.lt(c, x) for c in ch)
