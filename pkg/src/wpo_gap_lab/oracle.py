"""Brute-force oracles, kept independent of the recursive decisions.

Trees here are explicit node sets (``NodeTree``), embeddings are searched
exhaustively, and the multiset order is decided by trying every injection.
Nothing in this module calls the gap order, the term order or the matching
routine.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import BudgetError, InputError
from .gaptrees import GNode, XLeaf

ORACLE_MS_LIMIT = 8


@dataclass(frozen=True)
class NodeTree:
    """A rooted labelled tree: node 0 is the root, ``parent[0] == -1``.

    Nodes are numbered in preorder.
    """

    parent: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.parent) != len(self.labels):
            raise InputError("parent and label tables differ in length")
        if self.parent and self.parent[0] != -1:
            raise InputError("node 0 must be the root")
        for v, p in enumerate(self.parent[1:], 1):
            if not 0 <= p < v:
                raise InputError(f"node {v} has parent {p}; expected an earlier node")

    def __len__(self):
        return len(self.parent)

    def ancestors(self, v) -> list:
        """Path from v up to the root, v first."""
        out = []
        while v >= 0:
            out.append(v)
            v = self.parent[v]
        return out

    def leq(self, u, v) -> bool:
        """u lies on the path from the root to v."""
        return u in self.ancestors(v)

    def meet(self, u, v) -> int:
        up = set(self.ancestors(u))
        for w in self.ancestors(v):
            if w in up:
                return w
        raise InputError("nodes of one tree always have a meet")

    def strictly_between(self, u, v) -> list:
        """Nodes w with u < w < v (v must lie above u)."""
        path = self.ancestors(v)
        return path[1:path.index(u)]

    def below(self, v) -> list:
        return self.ancestors(v)[1:]


def nodetree(shape) -> NodeTree:
    """Build from nested ``(label, [children...])`` pairs."""
    parent, labels = [], []

    def walk(node, p):
        label, kids = node
        me = len(parent)
        parent.append(p)
        labels.append(label)
        for k in kids:
            walk(k, me)

    walk(shape, -1)
    return NodeTree(tuple(parent), tuple(labels))


def nodetree_of_gaptree(t) -> NodeTree:
    """Preorder numbering under the canonical child order.  Only for X = empty."""

    def shape(u):
        if isinstance(u, XLeaf):
            raise InputError("trees with X-leaves have no plain n-tree reading")
        return (u.label, [shape(c) for c in u.children.entries])

    return nodetree(shape(t))


def gaptree_of_term(s):
    """Send a term over W = M and X = empty to the corresponding tree of T_1."""
    from .kruskal import Node
    from .multiset import Multiset
    if not isinstance(s, Node) or not isinstance(s.payload, Multiset):
        raise InputError(f"{s} is not a term over M with no leaves")
    return GNode(0, [gaptree_of_term(r) for r in s.payload.entries])


def _meets_ok(S, T, f, v) -> bool:
    fv = f[v]
    for u in range(v):
        if T.meet(f[u], fv) != f[S.meet(u, v)]:
            return False
    return True


def tree_embeddings(S: NodeTree, T: NodeTree, raw: bool = False) -> list:
    """Every injective f: S -> T with f(s meet t) = f(s) meet f(t).

    Maps are tuples indexed by the nodes of S.  ``raw`` tries every injection
    and filters; otherwise nodes are assigned in preorder and pruned early.
    """
    m, k = len(S), len(T)
    if m == 0:
        return [()]
    if raw:
        return [f for f in permutations(range(k), m)
                if all(_meets_ok(S, T, f, v) for v in range(m))]
    out = []
    f = [0] * m
    used = [False] * k

    def assign(v):
        if v == m:
            out.append(tuple(f))
            return
        for w in range(k):
            if used[w]:
                continue
            f[v] = w
            if _meets_ok(S, T, f, v):
                used[w] = True
                assign(v + 1)
                used[w] = False

    assign(0)
    return out


def gap_conditions(S: NodeTree, T: NodeTree, f) -> list:
    """The gap conditions a candidate embedding violates, as short strings."""
    bad = []
    for v in range(len(S)):
        if S.labels[v] != T.labels[f[v]]:
            bad.append(f"label {v}")
    for v in range(1, len(S)):
        r = S.parent[v]
        if any(T.labels[w] < S.labels[v] for w in T.strictly_between(f[r], f[v])):
            bad.append(f"gap {r}-{v}")
    if len(S) and any(T.labels[w] < S.labels[0] for w in T.below(f[0])):
        bad.append("root")
    return bad


def gap_embed(n: int, S: NodeTree, T: NodeTree, raw: bool = False):
    """The first embedding satisfying the strong gap condition, or None."""
    for tree in (S, T):
        if any(not 0 <= lab < n for lab in tree.labels):
            raise InputError(f"labels must lie in [0, {n})")
    for f in tree_embeddings(S, T, raw=raw):
        if not gap_conditions(S, T, f):
            return f
    return None


def recheck_witness(n: int, S: NodeTree, T: NodeTree, f) -> bool:
    """Re-verify a witness from scratch: injective, meet-preserving, gap conditions."""
    if len(f) != len(S) or len(set(f)) != len(f):
        return False
    if any(not 0 <= w < len(T) for w in f):
        return False
    for u in range(len(S)):
        for v in range(len(S)):
            if T.meet(f[u], f[v]) != f[S.meet(u, v)]:
                return False
    return not gap_conditions(S, T, f)


def format_witness(f) -> str:
    return "\n".join(f"{s} -> {t}" for s, t in enumerate(f))


def ms_leq_oracle(P, sigma, tau) -> bool:
    """Injection order on multisets by trying every injection."""
    xs, ys = list(sigma), list(tau)
    if max(len(xs), len(ys)) > ORACLE_MS_LIMIT:
        raise BudgetError(f"oracle handles at most {ORACLE_MS_LIMIT} entries")
    for x in xs + ys:
        if x not in P:
            raise InputError(f"foreign entry {x!r}")
    return any(all(P.leq(x, ys[j]) for x, j in zip(xs, g))
               for g in permutations(range(len(ys)), len(xs)))


def plain_embeds(S: NodeTree, T: NodeTree) -> bool:
    """Kruskal's order: some embedding exists, labels ignored."""
    return bool(tree_embeddings(S, T))
