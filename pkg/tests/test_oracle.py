from itertools import product

import pytest

from wpo_gap_lab.errors import BudgetError, InputError
from wpo_gap_lab.gaptrees import GapParams, enumerate_gap_trees, gap_order, parse_tree
from wpo_gap_lab.kruskal import Node, enumerate_terms, term_system
from wpo_gap_lab.dilator import MULTISET
from wpo_gap_lab.multiset import Multiset
from wpo_gap_lab.oracle import (NodeTree, format_witness, gap_embed, gaptree_of_term,
                                ms_leq_oracle, nodetree, nodetree_of_gaptree, recheck_witness,
                                tree_embeddings)
from wpo_gap_lab.order import EMPTY, antichain, chain

DOT = nodetree((0, []))
CHAIN2 = nodetree((0, [(0, [])]))
CHERRY = nodetree((0, [(0, []), (0, [])]))


def nt(text):
    return nodetree_of_gaptree(parse_tree(text))


def test_tree_embeddings_examples():
    assert tree_embeddings(DOT, DOT) == [(0,)]
    assert tree_embeddings(DOT, CHAIN2) == [(0,), (1,)]
    assert tree_embeddings(CHERRY, CHAIN2) == []


def test_meet_preservation_excludes_siblings_on_a_path():
    chain3 = nodetree((0, [(0, [(0, [])])]))
    big = nodetree((0, [(0, [(0, []), (0, [])])]))
    assert tree_embeddings(CHERRY, chain3) == []
    # the two leaves of the cherry may not both sit over the root's only child
    assert (0, 1, 2) not in tree_embeddings(CHERRY, big)
    assert (1, 2, 3) in tree_embeddings(CHERRY, big)


def test_raw_mode_agrees_with_pruned_search():
    trees = [nodetree_of_gaptree(t) for t in enumerate_gap_trees(GapParams(1), 4)]
    for S, T in product(trees, repeat=2):
        assert tree_embeddings(S, T) == tree_embeddings(S, T, raw=True)


def test_gap_embed_examples():
    assert gap_embed(2, CHAIN2, CHAIN2) == (0, 1)
    assert gap_embed(2, nt("1()"), nt("0(1())")) is None
    assert gap_embed(2, nt("1()"), nt("1(0())")) == (0,)


def test_gap_embed_rejects_big_labels():
    with pytest.raises(InputError):
        gap_embed(1, nt("1()"), DOT)


@pytest.mark.parametrize("n,N", [(1, 4), (2, 3), (3, 3)])
def test_oracle_matches_recursive_order_and_witnesses_recheck(n, N):
    trees = enumerate_gap_trees(GapParams(n), N)
    order = gap_order(n, EMPTY)
    for s, t in product(trees, repeat=2):
        S, T = nodetree_of_gaptree(s), nodetree_of_gaptree(t)
        w = gap_embed(n, S, T)
        assert (w is not None) == order.leq(s, t)
        if w is not None:
            assert recheck_witness(n, S, T, w)


def test_recheck_rejects_bad_witness():
    S, T = nt("1()"), nt("0(1())")
    assert not recheck_witness(2, S, T, (1,))
    assert not recheck_witness(2, CHERRY, CHERRY, (1, 1, 2))


def test_nodetree_checks():
    with pytest.raises(InputError):
        NodeTree((0,), (0,))
    with pytest.raises(InputError):
        NodeTree((-1, 2, 0), (0, 0, 0))
    with pytest.raises(InputError):
        nt("0(@x)")


def test_preorder_numbering():
    t = nt("0(1(),0(1()))")
    assert t.labels == (0, 0, 1, 1) and t.parent == (-1, 0, 1, 0)


def test_gaptree_of_term():
    dot = Node((), Multiset())
    two = Node({dot}, Multiset([dot]))
    assert nodetree_of_gaptree(gaptree_of_term(dot)) == DOT
    assert gaptree_of_term(two) == parse_tree("0(0())")
    for s in enumerate_terms(term_system(EMPTY, MULTISET), 2, 3):
        assert len(nodetree_of_gaptree(gaptree_of_term(s))) == term_nodes(s)


def term_nodes(s):
    return 1 + sum(term_nodes(r) for r in s.payload.entries)


def test_ms_oracle_examples():
    P = antichain("u", "v")
    assert ms_leq_oracle(P, [], ["u"])
    assert ms_leq_oracle(chain("x"), ["x"], ["x"])
    assert not ms_leq_oracle(P, ["u", "u"], ["u", "v"])
    with pytest.raises(BudgetError):
        ms_leq_oracle(P, ["u"] * 9, ["u"] * 9)


def test_format_witness():
    assert format_witness((0, 2)) == "0 -> 0\n1 -> 2"
