"""Kruskal fixed points, PO-dilators and gap orders on labelled trees."""

from .dilator import Dilator, DValue, compose, identity_dilator, multiset_dilator, normal_form
from .gaptrees import GapParams, GNode, XLeaf, gap_dilator, gap_leq, gap_minus_dilator, parse_tree
from .kruskal import Leaf, Node, TermSystem, derivative, fold_initial, term_leq, term_system
from .multiset import Multiset, ms_leq
from .order import OrderMap, Poset, leq_fin, poset_validate

__version__ = "0.1.0"
