"""Labelled trees under the strong gap order, as normal dilators.

``XLeaf(x)`` is a leaf carrying an element of the base order and
``GNode(i, children)`` a node with label i < n and a multiset of children.
The composite order T_n o T_{n+1}^- reuses the same classes: its leaves carry
trees of T_{n+1}^-(X) as their elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .canon import canon_key, canon_sorted
from .dilator import Dilator, order_of, unit_weight
from .errors import InputError
from .multiset import Multiset, injection_exists, multisets_up_to
from .order import EMPTY, OrderMap, OrderView, Poset, leq_fin


class XLeaf:
    __slots__ = ("x", "sort_key", "_hash")

    def __init__(self, x):
        self.x = x
        self.sort_key = (40, 0, canon_key(x))
        self._hash = hash(self.sort_key)

    def __eq__(self, other):
        return isinstance(other, XLeaf) and self.sort_key == other.sort_key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return format_tree(self)


class GNode:
    __slots__ = ("label", "children", "sort_key", "_hash")

    def __init__(self, label: int, children=()):
        if not isinstance(children, Multiset):
            children = Multiset(children)
        self.label = label
        self.children = children
        self.sort_key = (40, 1, label, children.sort_key)
        self._hash = hash(self.sort_key)

    def __eq__(self, other):
        return (isinstance(other, GNode) and self._hash == other._hash
                and self.sort_key == other.sort_key)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return format_tree(self)


@dataclass(frozen=True)
class GapParams:
    n: int
    X: object = EMPTY


class GapOrder:
    """Memoized decision of the gap order on T_n(X)."""

    def __init__(self, n: int, X):
        self.n = n
        self.X = X
        self._memo: dict = {}

    def leq(self, s, t) -> bool:
        key = (s, t)
        r = self._memo.get(key)
        if r is None:
            r = self._memo[key] = self._decide(s, t)
        return r

    def _decide(self, s, t) -> bool:
        if isinstance(s, XLeaf):
            if isinstance(t, XLeaf):
                return self.X.leq(s.x, t.x)
            return any(self.leq(s, c) for c in t.children.entries)
        if isinstance(t, XLeaf):
            return False
        if t.label == s.label and injection_exists(
                s.children.entries, t.children.entries, self.leq):
            return True
        return t.label >= s.label and any(self.leq(s, c) for c in t.children.entries)


@lru_cache(maxsize=4096)
def gap_order(n: int, X) -> GapOrder:
    return GapOrder(n, X)


def is_gap_tree(n: int, X, t) -> bool:
    if isinstance(t, XLeaf):
        return t.x in X
    if isinstance(t, GNode):
        return (isinstance(t.label, int) and 0 <= t.label < n
                and all(is_gap_tree(n, X, c) for c in t.children.entries))
    return False


def _check(params: GapParams, *trees):
    for t in trees:
        if not is_gap_tree(params.n, params.X, t):
            raise InputError(f"{t} is not a tree of T_{params.n} over the given order")


def gap_leq(params: GapParams, s, t) -> bool:
    _check(params, s, t)
    return gap_order(params.n, params.X).leq(s, t)


def gap_height(params: GapParams, t) -> int:
    if isinstance(t, XLeaf):
        return 0
    return max((gap_height(params, c) + 1 for c in t.children.entries), default=0)


def gap_size(t, weight: Callable = unit_weight) -> int:
    """Node count, with an X-leaf costing ``weight(x)``."""
    if isinstance(t, XLeaf):
        return weight(t.x)
    return 1 + sum(gap_size(c, weight) for c in t.children.entries)


def _map(f, t):
    if isinstance(t, XLeaf):
        return XLeaf(f(t.x))
    return GNode(t.label, Multiset(_map(f, c) for c in t.children.entries))


def gap_map(params: GapParams, f: OrderMap, t):
    return _map(f, t)


def _supp(t) -> frozenset:
    if isinstance(t, XLeaf):
        return frozenset((t.x,))
    out = set()
    for c in t.children.entries:
        out |= _supp(c)
    return frozenset(out)


def gap_supp(params: GapParams, t) -> frozenset:
    return _supp(t)


def _trees_up_to(n, X, budget, weight):
    if budget < 1 and weight is unit_weight:
        return ()
    found = {XLeaf(x): None for x in X.elements if weight(x) <= budget}
    if budget >= 1:
        smaller = _trees_cached(n, X, budget - 1) if weight is unit_weight \
            else _trees_up_to(n, X, budget - 1, weight)
        found.update(dict.fromkeys(smaller))
        if n > 0:
            for kids in multisets_up_to(smaller, budget - 1, lambda c: gap_size(c, weight)):
                for i in range(n):
                    found[GNode(i, kids)] = None
    return canon_sorted(found)


@lru_cache(maxsize=256)
def _trees_cached(n, X, budget):
    return _trees_up_to(n, X, budget, unit_weight)


def enumerate_gap_trees(params: GapParams, max_nodes: int, weight: Callable | None = None,
                        minus: bool = False) -> list:
    """Every tree of T_n(X) (or T_n^-(X)) with at most ``max_nodes`` nodes."""
    weight = weight or unit_weight
    if weight is unit_weight:
        trees = _trees_cached(params.n, params.X, max_nodes)
    else:
        trees = _trees_up_to(params.n, params.X, max_nodes, weight)
    if minus:
        trees = [t for t in trees if in_minus(t)]
    return list(trees)


def in_minus(t) -> bool:
    return isinstance(t, XLeaf) or t.label == 0


def _gap_dilator(n: int, minus: bool) -> Dilator:
    def member(P, t):
        return is_gap_tree(n, P, t) and (not minus or in_minus(t))

    def leq(P, s, t):
        if not (member(P, s) and member(P, t)):
            raise InputError(f"{s} or {t} is not a tree over the carrier")
        return gap_order(n, P).leq(s, t)

    return Dilator(
        name=f"Tminus({n})" if minus else f"T({n})",
        leq=leq,
        map=lambda f, t: _map(f, t),
        supp=lambda P, t: _supp(t),
        enumerate=lambda P, budget, weight=None: enumerate_gap_trees(
            GapParams(n, P), budget, weight, minus=minus),
        size=gap_size,
        member=member,
    )


@lru_cache(maxsize=None)
def gap_dilator(n: int) -> Dilator:
    if n < 0:
        raise InputError("n must be >= 0")
    return _gap_dilator(n, minus=False)


@lru_cache(maxsize=None)
def gap_minus_dilator(m: int) -> Dilator:
    if m < 1:
        raise InputError("the minus variant needs at least one label")
    return _gap_dilator(m, minus=True)


# -- the iso between T_n o T_{n+1}^- and T_{n+1} ----------------------------

def minus_order(n1: int, X) -> OrderView:
    """T_{n1}^-(X) as an order view."""
    return order_of(gap_minus_dilator(n1), X)


def pi(n: int, X, s):
    """Unravel boxed leaves and shift the outer labels up by one."""
    if isinstance(s, XLeaf):
        if not (is_gap_tree(n + 1, X, s.x) and in_minus(s.x)):
            raise InputError(f"leaf {s.x} is not in T_{n + 1}^-")
        return s.x
    if not isinstance(s, GNode) or not 0 <= s.label < n:
        raise InputError(f"{s} is not in the composite order for n={n}")
    return GNode(s.label + 1, Multiset(pi(n, X, c) for c in s.children.entries))


def pi_inv(n: int, X, t):
    if not is_gap_tree(n + 1, X, t):
        raise InputError(f"{t} is not a tree of T_{n + 1}")
    return _pi_inv(t)


def _pi_inv(t):
    if in_minus(t):
        return XLeaf(t)
    return GNode(t.label - 1, Multiset(_pi_inv(c) for c in t.children.entries))


def iota_n(n: int, X, x) -> XLeaf:
    if x not in X:
        raise InputError(f"{x!r} is not in the base order")
    return XLeaf(x)


def kappa_n(n: int, X, sigma: Multiset) -> GNode:
    return GNode(0, Multiset(pi(n, X, s) for s in sigma.entries))


def gap_fixed_point(n: int, X):
    """(T_{n+1}^-(X), iota^n, kappa^n) as a fold target for M o T_n."""
    from .kruskal import KruskalTarget
    return KruskalTarget(minus_order(n + 1, X), lambda x: iota_n(n, X, x),
                         lambda sigma: kappa_n(n, X, sigma), name=f"Tminus({n + 1})")


def tree_target(X):
    """T_1^-(X) as a fold target for M itself: a multiset of trees becomes 0 * [...]."""
    from .kruskal import KruskalTarget
    return KruskalTarget(minus_order(1, X), XLeaf, lambda sigma: GNode(0, sigma.entries),
                         name="Tminus(1)")


def zero_subtree_check(n: int, X, s, t) -> tuple[bool, bool]:
    """Both sides of: s <= pi(t) in T_{n+1}  iff  s <=fin supp^{T_n}(t) in T_{n+1}^-."""
    lhs = gap_order(n + 1, X).leq(s, pi(n, X, t))
    rhs = leq_fin(minus_order(n + 1, X), frozenset((s,)), _supp(t))
    return lhs, rhs


# -- text grammar -----------------------------------------------------------

def format_tree(t) -> str:
    if isinstance(t, XLeaf):
        x = t.x
        if isinstance(x, (XLeaf, GNode)):
            return "<" + format_tree(x) + ">"
        return f"@{x}"
    return f"{t.label}(" + ",".join(format_tree(c) for c in t.children.entries) + ")"


def parse_tree(text: str):
    """Parse ``label(child,...)`` / ``@ident``; children form a multiset."""
    t, pos = _parse(text, 0)
    if pos != len(text):
        raise InputError(f"trailing input at {pos} in {text!r}")
    return t


def _parse(s, i):
    if i < len(s) and s[i] == "@":
        j = i + 1
        while j < len(s) and (s[j].isalnum() or s[j] in "_-"):
            j += 1
        if j == i + 1:
            raise InputError(f"empty identifier at {i}")
        return XLeaf(s[i + 1:j]), j
    j = i
    while j < len(s) and s[j].isdigit():
        j += 1
    if j == i or j >= len(s) or s[j] != "(":
        raise InputError(f"expected label '(' or '@ident' at {i} in {s!r}")
    label = int(s[i:j])
    i = j + 1
    kids = []
    if i < len(s) and s[i] == ")":
        return GNode(label, kids), i + 1
    while True:
        c, i = _parse(s, i)
        kids.append(c)
        if i < len(s) and s[i] == ",":
            i += 1
        elif i < len(s) and s[i] == ")":
            return GNode(label, kids), i + 1
        else:
            raise InputError(f"expected ',' or ')' at {i} in {s!r}")
