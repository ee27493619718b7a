from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from wpo_gap_lab.dilator import (MULTISET, check_functoriality, check_naturality_supp,
                                 check_normality, check_support_condition, compose,
                                 identity_dilator)
from wpo_gap_lab.errors import InputError
from wpo_gap_lab.gaptrees import (GNode, GapParams, XLeaf, enumerate_gap_trees, format_tree,
                                  gap_dilator, gap_fixed_point, gap_height, gap_leq, gap_map,
                                  gap_minus_dilator, gap_order, gap_supp, in_minus, iota_n,
                                  kappa_n, minus_order, parse_tree, pi, pi_inv,
                                  zero_subtree_check)
from wpo_gap_lab.harness import composite_universe
from wpo_gap_lab.kruskal import check_fixed_point_axioms
from wpo_gap_lab.multiset import Multiset
from wpo_gap_lab.order import (EMPTY, OrderMap, Poset, antichain, chain, identity_map,
                               inclusion, leq_fin, poset_validate)

CHAIN = chain("x", "y")
VEE = Poset.from_covers(["b", "l", "r"], [("b", "l"), ("b", "r")])
T = parse_tree


def P(n, X=EMPTY):
    return GapParams(n, X)


def test_gap_leq_examples():
    assert gap_leq(P(1), T("0()"), T("0(0())"))
    assert not gap_leq(P(2), T("1()"), T("0(1())"))
    assert gap_leq(P(2), T("0(1())"), T("0(0(1()))"))


def test_gap_leq_gap_clause():
    # descending through a lower label is forbidden, through a higher one allowed
    assert not gap_leq(P(2), T("1(1())"), T("1(0(1()))"))
    assert gap_leq(P(2), T("0(0())"), T("0(1(0()))"))


def test_gap_leq_rejects_bad_label():
    with pytest.raises(InputError):
        gap_leq(P(2), T("2()"), T("0()"))
    with pytest.raises(InputError):
        gap_leq(P(1), T("@x"), T("0()"))


def test_height_examples():
    assert gap_height(P(1, CHAIN), T("@x")) == 0
    assert gap_height(P(1), T("0()")) == 0
    assert gap_height(P(2), T("0(1())")) == 1


def test_map_and_supp_examples():
    t = T("0(@x,0(@y))")
    assert gap_map(P(1, CHAIN), identity_map(CHAIN), t) == t
    assert gap_map(P(1, CHAIN), identity_map(CHAIN), T("0()")) == T("0()")
    assert gap_map(P(1), inclusion(CHAIN, {"x"}), T("0(@x)")) == T("0(@x)")
    assert gap_supp(P(1, CHAIN), T("@x")) == {"x"}
    assert gap_supp(P(2), T("1()")) == frozenset()
    assert gap_supp(P(1, CHAIN), t) == {"x", "y"}


def test_enumeration_counts():
    assert enumerate_gap_trees(P(1), 1) == [GNode(0)]
    assert len(enumerate_gap_trees(P(2), 2)) == 6
    assert set(map(format_tree, enumerate_gap_trees(P(1), 3))) == {
        "0()", "0(0())", "0(0(0()))", "0(0(),0())"}
    assert enumerate_gap_trees(P(0), 5) == []
    # rooted unordered trees with 1..5 nodes: 1, 1, 2, 4, 9
    assert len(enumerate_gap_trees(P(1), 5)) == 17


def test_minus_enumeration_has_label_zero_roots():
    trees = gap_minus_dilator(1).enumerate(EMPTY, 3)
    assert trees and all(in_minus(t) and t.label == 0 for t in trees)
    assert all(in_minus(t) for t in enumerate_gap_trees(P(3, CHAIN), 3, minus=True))


def test_t0_is_identity():
    T0, ID = gap_dilator(0), identity_dilator()
    vals = T0.enumerate(VEE, 3)
    assert [t.x for t in vals] == ID.enumerate(VEE, 3)
    for s, t in product(vals, repeat=2):
        assert T0.leq(VEE, s, t) == ID.leq(VEE, s.x, t.x)


@pytest.mark.parametrize("n,X,N", [(1, EMPTY, 5), (2, EMPTY, 4), (3, EMPTY, 4),
                                   (2, CHAIN, 3), (3, VEE, 3)])
def test_partial_order_and_height_monotonicity(n, X, N):
    trees = enumerate_gap_trees(P(n, X), N)
    order = gap_order(n, X)
    assert poset_validate(Poset(trees, leq=order.leq)) == []
    for s, t in product(trees, repeat=2):
        if order.leq(s, t):
            assert gap_height(P(n, X), s) <= gap_height(P(n, X), t)


def test_dilator_laws():
    f = OrderMap(CHAIN, VEE, {"x": "b", "y": "l"}, "embedding")
    g = OrderMap(VEE, antichain("p", "q", "s"), {"b": "p", "l": "q", "r": "s"}, "quasi")
    for W in (gap_dilator(1), gap_dilator(2), gap_minus_dilator(1), gap_minus_dilator(2)):
        assert check_normality(W, VEE, 3) == []
        assert check_support_condition(W, f, 3) == []
        assert check_naturality_supp(W, f, 3) == []
        assert check_functoriality(W, f, g, 3) == []


def test_pi_examples():
    assert pi(0, EMPTY, XLeaf(T("0()"))) == T("0()")
    s = GNode(0, [XLeaf(T("0()"))])
    assert pi(1, EMPTY, s) == T("1(0())")
    assert pi_inv(1, EMPTY, T("1(0())")) == s
    with pytest.raises(InputError):
        pi(1, EMPTY, XLeaf(T("1()")))
    with pytest.raises(InputError):
        pi_inv(1, EMPTY, T("2()"))


@pytest.mark.parametrize("n,X,N", [(0, EMPTY, 5), (1, EMPTY, 4), (1, CHAIN, 3), (0, VEE, 3)])
def test_pi_is_order_isomorphism(n, X, N):
    comp = composite_universe(n, X, N)
    images = [pi(n, X, s) for s in comp]
    assert sorted(images) == sorted(enumerate_gap_trees(P(n + 1, X), N))
    W = compose(gap_dilator(n), gap_minus_dilator(n + 1))
    big = gap_order(n + 1, X)
    for (s, a), (t, b) in product(zip(comp, images), repeat=2):
        assert W.leq(X, s, t) == big.leq(a, b)
    assert all(pi_inv(n, X, a) == s for s, a in zip(comp, images))


def test_iota_kappa_examples():
    assert kappa_n(1, EMPTY, Multiset()) == T("0()")
    assert kappa_n(0, CHAIN, Multiset([XLeaf(XLeaf("x"))])) == T("0(@x)")
    assert iota_n(0, CHAIN, "x") == XLeaf("x")
    with pytest.raises(InputError):
        iota_n(0, CHAIN, "q")


def test_iota_below_kappa_matches_support():
    frag = enumerate_gap_trees(P(2, CHAIN), 2, minus=True)
    W = compose(MULTISET, gap_dilator(1))
    Z = minus_order(2, CHAIN)
    view = Z.restrict(frag)
    for sigma in W.enumerate(view, 2):
        k = kappa_n(1, CHAIN, sigma)
        for x in CHAIN.elements:
            lhs = gap_order(2, CHAIN).leq(XLeaf(x), k)
            rhs = any(gap_order(2, CHAIN).leq(XLeaf(x), pi(1, CHAIN, s)) for s in sigma)
            assert lhs == rhs == leq_fin(Z, {XLeaf(x)}, W.supp(view, sigma))


@pytest.mark.parametrize("n,X", [(0, EMPTY), (1, EMPTY), (0, CHAIN), (1, CHAIN)])
def test_gap_fixed_point_axioms(n, X):
    frag = enumerate_gap_trees(P(n + 1, X), 2, minus=True)
    W = compose(MULTISET, gap_dilator(n))
    assert check_fixed_point_axioms(W, X, gap_fixed_point(n, X), frag, 2) == []


@pytest.mark.parametrize("n,X,N", [(0, EMPTY, 4), (1, EMPTY, 4), (1, CHAIN, 3)])
def test_zero_subtrees(n, X, N):
    minus = enumerate_gap_trees(P(n + 1, X), N, minus=True)
    for s, t in product(minus, composite_universe(n, X, N)):
        lhs, rhs = zero_subtree_check(n, X, s, t)
        assert lhs == rhs


def test_text_grammar():
    t = T("0(1(),0(@x))")
    assert t == T("0(0(@x),1())")
    assert format_tree(t) == "0(0(@x),1())"
    assert format_tree(XLeaf(T("0()"))) == "<0()>"
    for bad in ("0(", "(0)", "0()x", "@", "0(1() )", "a()"):
        with pytest.raises(InputError):
            T(bad)


UNIVERSE = enumerate_gap_trees(P(2, CHAIN), 4)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(UNIVERSE))
def test_format_parse_round_trip(t):
    assert T(format_tree(t)) == t


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(UNIVERSE), st.sampled_from(UNIVERSE), st.sampled_from(UNIVERSE))
def test_transitivity_random(s, t, u):
    order = gap_order(2, CHAIN)
    if order.leq(s, t) and order.leq(t, u):
        assert order.leq(s, u)
