from hypothesis import given, strategies as st
import pytest

from wpo_gap_lab.errors import InputError
from wpo_gap_lab.multiset import (Multiset, injection_exists, ms_enumerate, ms_leq, ms_map,
                                  ms_supp, multisets_up_to, parse_multiset)
from wpo_gap_lab.oracle import ms_leq_oracle
from wpo_gap_lab.order import (OrderMap, Poset, antichain, chain, identity_map, image_fin,
                               inclusion, leq_fin, poset_validate)

CHAIN = chain("x", "y")
ANTI = antichain("u", "v")
VEE = Poset.from_covers(["b", "l", "r"], [("b", "l"), ("b", "r")])
POSETS = [chain("x"), CHAIN, ANTI, VEE, chain("x", "y", "z"), antichain("u", "v", "w")]


def test_canonical_order_ignores_construction_order():
    assert Multiset(["y", "x", "y"]) == Multiset(["y", "y", "x"])
    assert Multiset(["y", "x"]).entries == ("x", "y")
    assert Multiset(["x"]) != Multiset(["x", "x"])
    assert hash(Multiset([2, 1])) == hash(Multiset([1, 2]))


def test_ms_leq_examples():
    assert ms_leq(CHAIN, Multiset(), Multiset(["y"]))
    assert ms_leq(CHAIN, Multiset(["x", "x"]), Multiset(["x", "y"]))
    assert not ms_leq(ANTI, Multiset(["u", "u"]), Multiset(["u", "v"]))


def test_ms_leq_foreign_entry():
    with pytest.raises(InputError):
        ms_leq(CHAIN, Multiset(["q"]), Multiset(["x"]))


def test_matching_needs_augmenting_paths():
    # greedy choice of y for x would block the second entry
    assert injection_exists(["x", "y"], ["y", "x"], CHAIN.leq)
    assert injection_exists(["x", "y"], ["y", "y"], CHAIN.leq)
    assert not injection_exists(["y", "y"], ["x", "y"], CHAIN.leq)


def test_ms_map_and_supp_examples():
    ident = identity_map(CHAIN)
    assert ms_map(ident, Multiset(["x", "x"])) == Multiset(["x", "x"])
    assert ms_map(ident, Multiset()) == Multiset()
    assert ms_map(inclusion(CHAIN, {"x"}), Multiset(["x"])) == Multiset(["x"])
    assert ms_supp(Multiset()) == frozenset()
    assert ms_supp(Multiset(["x", "x"])) == {"x"}
    assert ms_supp(Multiset(["x", "y"])) == {"x", "y"}


def test_ms_enumerate_examples():
    assert ms_enumerate(VEE, 0) == [Multiset()]
    assert set(ms_enumerate(chain("x"), 2)) == {Multiset(), Multiset(["x"]), Multiset(["x", "x"])}
    assert set(ms_enumerate(ANTI, 1)) == {Multiset(), Multiset(["u"]), Multiset(["v"])}


def test_ms_enumerate_is_duplicate_free_and_deterministic():
    a = ms_enumerate(VEE, 3)
    assert len(a) == len(set(a)) == 20
    assert a == ms_enumerate(VEE, 3)


def test_weighted_enumeration():
    got = multisets_up_to(["a", "b"], 3, {"a": 1, "b": 2}.get)
    assert set(got) == {Multiset(), Multiset("a"), Multiset("aa"), Multiset("aaa"),
                        Multiset("b"), Multiset("ab")}
    with pytest.raises(InputError):
        multisets_up_to(["a"], 2, lambda _: 0)


@pytest.mark.parametrize("P", POSETS, ids=repr)
def test_matching_agrees_with_injection_oracle(P):
    univ = ms_enumerate(P, 3)
    for s in univ:
        for t in univ:
            assert ms_leq(P, s, t) == ms_leq_oracle(P, s, t)


@pytest.mark.parametrize("P", POSETS, ids=repr)
def test_ms_order_is_partial_and_normal(P):
    univ = ms_enumerate(P, 3)
    assert poset_validate(Poset(univ, leq=lambda s, t: ms_leq(P, s, t))) == []
    for s in univ:
        for t in univ:
            if ms_leq(P, s, t):
                assert leq_fin(P, ms_supp(s), ms_supp(t))


def test_support_condition_and_naturality_for_embedding():
    f = OrderMap(CHAIN, VEE, {"x": "b", "y": "l"}, "embedding")
    images = {ms_map(f, s) for s in ms_enumerate(CHAIN, 3)}
    for t in ms_enumerate(VEE, 3):
        assert (ms_supp(t) <= f.range()) == (t in images)
    for s in ms_enumerate(CHAIN, 3):
        assert ms_supp(ms_map(f, s)) == image_fin(f, ms_supp(s))


entries = st.lists(st.sampled_from(["b", "l", "r"]), max_size=4)


@given(entries, entries)
def test_matching_agrees_with_oracle_randomly(xs, ys):
    assert ms_leq(VEE, Multiset(xs), Multiset(ys)) == ms_leq_oracle(VEE, xs, ys)


@given(entries)
def test_functoriality(xs):
    f = OrderMap(chain("a", "b", "c"), VEE, {"a": "b", "b": "l", "c": "r"}, "quasi")
    g = OrderMap(VEE, antichain("p", "q", "s"), {"b": "p", "l": "q", "r": "s"}, "quasi")
    inv = {"b": "a", "l": "b", "r": "c"}
    s = Multiset(inv[x] for x in xs)
    assert ms_map(f.then(g), s) == ms_map(g, ms_map(f, s))


def test_parse_multiset():
    assert parse_multiset("[ a , b,a ]") == Multiset(["a", "a", "b"])
    assert parse_multiset("[]") == Multiset()
    for bad in ("a,b", "[a,,b]", "[a b"):
        with pytest.raises(InputError):
            parse_multiset(bad)
