"""Relativized Kruskal fixed points: the term system over a normal dilator W.

Terms are leaves ``Leaf(x)`` for x in the base order and nodes
``Node(a, payload)`` where ``a`` is a finite set of terms and ``payload`` is a
W-value over the suborder on ``a`` whose support is all of ``a``.  The order
is decided by simultaneous recursion on term length; results are memoized
per :class:`TermSystem`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable

from .canon import canon_key, canon_sorted
from .dilator import DValue, Dilator, normal_form, unit_weight
from .errors import InputError, TargetError, TermValidationError
from .multiset import Multiset
from .order import EMPTY, OrderMap, OrderView, Poset, Violation, leq_fin, poset_validate


class Leaf:
    __slots__ = ("x", "sort_key", "_hash")
    height = 0
    length = 0

    def __init__(self, x):
        self.x = x
        self.sort_key = (30, 0, canon_key(x))
        self._hash = hash(self.sort_key)

    def __eq__(self, other):
        return isinstance(other, Leaf) and self.sort_key == other.sort_key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return f"leaf:{self.x}"


class Node:
    """``o(a, payload)``.  Membership in a term system is checked separately."""

    __slots__ = ("a", "payload", "height", "length", "sort_key", "_hash")

    def __init__(self, a, payload):
        self.a = frozenset(a)
        self.payload = payload
        self.height = max((r.height + 1 for r in self.a), default=0)
        self.length = 1 + sum(2 * r.length for r in self.a)
        self.sort_key = (30, 1, self.height, self.length,
                         tuple(sorted(r.sort_key for r in self.a)), canon_key(payload))
        self._hash = hash(self.sort_key)

    def __eq__(self, other):
        return (isinstance(other, Node) and self._hash == other._hash
                and self.sort_key == other.sort_key)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        p = self.payload
        if isinstance(p, Multiset) and all(isinstance(e, (Leaf, Node)) for e in p):
            return "node[" + ";".join(map(str, p.entries)) + "]"
        return f"node<{p}>"


def term_length(s) -> int:
    return s.length


def term_height(s) -> int:
    return s.height


def mk_leaf(S: "TermSystem", x) -> Leaf:
    if x not in S.base:
        raise InputError(f"{x!r} is not in the base order")
    return Leaf(x)


class TermSystem:
    """The term order over base order X for a normal dilator W."""

    def __init__(self, base, dilator: Dilator):
        if not dilator.normal:
            raise InputError(f"dilator {dilator.name} is not normal")
        self.base = base
        self.dilator = dilator
        self._leq: dict = {}
        self._sub: dict = {}
        self._po_ok: dict = {}
        self._valid: dict = {}
        self._by_size: dict = {}
        self.order = OrderView(self.leq, self.contains, memoize=False,
                               name=f"T{dilator.name}({getattr(base, 'name', '') or '?'})")

    def __repr__(self):
        return f"<TermSystem {self.order.name}>"

    def suborder(self, a) -> Poset:
        a = frozenset(a)
        P = self._sub.get(a)
        if P is None:
            P = self._sub[a] = Poset(a, leq=self.leq, memoize=False)
        return P

    def _partially_ordered(self, a) -> bool:
        ok = self._po_ok.get(a)
        if ok is None:
            ok = self._po_ok[a] = not poset_validate(self.suborder(a))
        return ok

    def leq(self, s, t) -> bool:
        key = (s, t)
        r = self._leq.get(key)
        if r is None:
            r = self._leq[key] = self._decide(s, t)
        return r

    def _decide(self, s, t) -> bool:
        if isinstance(t, Leaf):
            return isinstance(s, Leaf) and self.base.leq(s.x, t.x)
        # t = o(b, tau): s may sit below some child of t
        if any(self.leq(s, r) for r in t.a):
            return True
        if isinstance(s, Leaf):
            return False
        # otherwise compare payloads inside the suborder on a u b
        ab = s.a | t.a
        if not self._partially_ordered(ab):
            return False
        W = self.dilator
        Pab = self.suborder(ab)
        ia = OrderMap(self.suborder(s.a), Pab, {x: x for x in s.a}, "embedding")
        ib = OrderMap(self.suborder(t.a), Pab, {x: x for x in t.a}, "embedding")
        return W.leq(Pab, W.map(ia, s.payload), W.map(ib, t.payload))

    def validate(self, s) -> list[Violation]:
        cached = self._valid.get(s)
        if cached is not None:
            return cached
        out = []
        if isinstance(s, Leaf):
            if s.x not in self.base:
                out.append(Violation("leaf-outside-base", (s,)))
        elif isinstance(s, Node):
            for r in canon_sorted(s.a):
                out.extend(self.validate(r))
            if not out:
                Pa = self.suborder(s.a)
                if not self._partially_ordered(s.a):
                    out.append(Violation("children-not-partially-ordered", (s,)))
                elif not self.dilator.member(Pa, s.payload):
                    out.append(Violation("payload-not-over-children", (s,)))
                elif frozenset(self.dilator.supp(Pa, s.payload)) != s.a:
                    out.append(Violation("support-mismatch", (s,)))
        else:
            out.append(Violation("not-a-term", (s,)))
        self._valid[s] = out
        return out

    def contains(self, s) -> bool:
        return not self.validate(s)

    def kappa(self, payload, carrier=None) -> Node:
        """kappa(sigma) = o(a, sigma0) for the normal form of ``payload``."""
        carrier = self.order if carrier is None else carrier
        a, sigma0 = normal_form(DValue(self.dilator, carrier, payload))
        return Node(a, sigma0.payload)

    def size(self, s, weight: Callable = unit_weight) -> int:
        return term_size(self.dilator, s, weight)

    def enumerate_by_size(self, budget: int, weight: Callable | None = None) -> list:
        """All terms whose weighted structural size is at most ``budget``."""
        weight = weight or unit_weight
        if weight is unit_weight:
            return list(self._unit_by_size(budget))
        return list(self._weighted_by_size(budget, weight))

    def _unit_by_size(self, budget):
        got = self._by_size.get(budget)
        if got is None:
            got = self._by_size[budget] = self._weighted_by_size(budget, unit_weight)
        return got

    def _weighted_by_size(self, budget, weight):
        found = {}
        if budget >= 1:
            prev = (self._unit_by_size(budget - 1) if weight is unit_weight
                    else self._weighted_by_size(budget - 1, weight))
            for t in prev:
                found[t] = None
            for x in self.base.elements:
                if weight(x) <= budget:
                    found[Leaf(x)] = None
            W = self.dilator
            Q = self.order.restrict(prev)
            for sigma in W.enumerate(Q, budget - 1, lambda r: self.size(r, weight)):
                found[self.kappa(sigma, Q)] = None
        return canon_sorted(found)


def term_size(W: Dilator, s, weight: Callable = unit_weight) -> int:
    if isinstance(s, Leaf):
        return weight(s.x)
    return 1 + W.size(s.payload, lambda r: term_size(W, r, weight))


@lru_cache(maxsize=1024)
def term_system(base, dilator: Dilator) -> TermSystem:
    return TermSystem(base, dilator)


def term_leq(S: TermSystem, s, t) -> bool:
    for u in (s, t):
        bad = S.validate(u)
        if bad:
            raise TermValidationError(str(bad[0]))
    return S.leq(s, t)


def validate_term(S: TermSystem, s) -> list[Violation]:
    return S.validate(s)


def kappa(S: TermSystem, sigma: DValue) -> Node:
    if sigma.dilator is not S.dilator:
        raise InputError("payload belongs to a different dilator")
    for r in sigma.carrier.elements if isinstance(sigma.carrier, Poset) else ():
        if not S.contains(r):
            raise TermValidationError(f"{r} is not a term of {S.order.name}")
    return S.kappa(sigma.payload, sigma.carrier)


def enumerate_terms(S: TermSystem, max_height: int, max_payload: int) -> list:
    """Terms of height <= max_height whose node payloads have size <= max_payload.

    Payload size is the dilator's structural size with unit element weights
    (for M: the number of entries).
    """
    if max_height < 0 or max_payload < 0:
        return []
    W = S.dilator
    found = {Leaf(x): None for x in S.base.elements}
    for sigma in W.enumerate(EMPTY, max_payload):
        found[S.kappa(sigma, EMPTY)] = None
    for _ in range(max_height):
        Q = S.order.restrict(found)
        for sigma in W.enumerate(Q, max_payload):
            found[S.kappa(sigma, Q)] = None
    return list(canon_sorted(found))


# -- folds into other fixed points ------------------------------------------

@dataclass(frozen=True, eq=False)
class KruskalTarget:
    """A candidate Kruskal fixed point (Z', iota', kappa') of some dilator.

    ``order`` compares elements of Z'; ``kappa`` receives payloads over the
    order Z' itself.
    """

    order: object
    iota: Callable
    kappa: Callable
    name: str = ""


def fold_initial(S: TermSystem, target: KruskalTarget, s, memo: dict | None = None):
    """The unique structure-preserving map from the term system into ``target``."""
    memo = {} if memo is None else memo
    got = memo.get(s)
    if got is not None:
        return got
    if isinstance(s, Leaf):
        out = target.iota(s.x)
    else:
        images = {r: fold_initial(S, target, r, memo) for r in s.a}
        g = OrderMap(S.suborder(s.a), target.order, images, "quasi")
        try:
            out = target.kappa(S.dilator.map(g, s.payload))
        except (KeyError, InputError, TypeError) as exc:
            raise TargetError(f"{target.name or 'target'} rejected the image of {s}") from exc
    if out is None:
        raise TargetError(f"{target.name or 'target'} has no value for {s}")
    memo[s] = out
    return out


def self_target(S: TermSystem) -> KruskalTarget:
    return KruskalTarget(S.order, Leaf, S.kappa, name=S.order.name)


def leaf_support(s) -> frozenset:
    if isinstance(s, Leaf):
        return frozenset((s.x,))
    out = set()
    for r in s.a:
        out |= leaf_support(r)
    return frozenset(out)


def derivative_map(W: Dilator, f: OrderMap, s):
    SX = term_system(f.source, W)
    SY = term_system(f.target, W)
    target = KruskalTarget(SY.order, lambda x: Leaf(f(x)), SY.kappa, name=SY.order.name)
    return fold_initial(SX, target, s)


@lru_cache(maxsize=None)
def derivative(W: Dilator) -> Dilator:
    """The Kruskal derivative of a normal dilator: terms as a dilator themselves."""
    if not W.normal:
        raise InputError(f"dilator {W.name} is not normal")
    return Dilator(
        name=f"deriv({W.name})",
        leq=lambda P, s, t: term_system(P, W).leq(s, t),
        map=lambda f, s: derivative_map(W, f, s),
        supp=lambda P, s: leaf_support(s),
        enumerate=lambda P, budget, weight=None: term_system(P, W).enumerate_by_size(budget, weight),
        size=lambda s, weight: term_size(W, s, weight),
        member=lambda P, s: term_system(P, W).contains(s),
    )


# -- law checks against the fixed-point axioms ------------------------------

def check_fixed_point_axioms(W: Dilator, X, target: KruskalTarget, elements,
                             budget: int) -> list[Violation]:
    """Check the fixed-point axioms on a finite fragment of the target.

    ``elements`` is a finite fragment of Z'; payloads are the W-values over it
    of size <= ``budget``.
    """
    Z = target.order
    frag = Z.restrict(elements)
    payloads = W.enumerate(frag, budget)
    kappas = [target.kappa(p) for p in payloads]
    supps = [W.supp(frag, p) for p in payloads]
    iotas = {x: target.iota(x) for x in X.elements}
    out = []
    kset = {}
    for p, k in zip(payloads, kappas):
        kset.setdefault(k, p)
    for x, ix in iotas.items():
        if ix in kset:
            out.append(Violation("ranges-overlap", (x, kset[ix])))
    for x, y in product(X.elements, repeat=2):
        if Z.leq(iotas[x], iotas[y]) and not X.leq(x, y):
            out.append(Violation("iota-reflects", (x, y)))
    for x, ix in iotas.items():
        for p, k, sp in zip(payloads, kappas, supps):
            lhs = Z.leq(ix, k)
            rhs = any(Z.leq(ix, z) for z in sp)
            if lhs != rhs:
                out.append(Violation("iota-below-kappa", (x, p)))
    for p, k in zip(payloads, kappas):
        for y, iy in iotas.items():
            if Z.leq(k, iy):
                out.append(Violation("kappa-below-iota", (p, y)))
    for (p, kp), (q, kq, sq) in product(zip(payloads, kappas), zip(payloads, kappas, supps)):
        lhs = Z.leq(kp, kq)
        rhs = W.leq(frag, p, q) or any(Z.leq(kp, z) for z in sq)
        if lhs != rhs:
            out.append(Violation("kappa-vs-kappa", (p, q)))
    return out


def check_initiality_witness(W: Dilator, target: KruskalTarget, height: Callable,
                             elements, budget: int) -> list[Violation]:
    """``height(s) < height(kappa(sigma))`` for every s in supp(sigma)."""
    frag = target.order.restrict(elements)
    out = []
    for p in W.enumerate(frag, budget):
        hk = height(target.kappa(p))
        for s in W.supp(frag, p):
            if not height(s) < hk:
                out.append(Violation("height-witness", (s, p)))
    return out


def star_check(S: TermSystem, elements, budget: int, reference_leq: Callable) -> list[Violation]:
    """For W = M: kappa(s) <= kappa(t) iff s <=_M t or kappa(s) <= some member of supp(t).

    The left side is decided by ``reference_leq`` (an independent order on
    terms), the right side by the multiset order and the term order.
    """
    W = S.dilator
    frag = S.order.restrict(elements)
    payloads = W.enumerate(frag, budget)
    nodes = [S.kappa(p, frag) for p in payloads]
    out = []
    for (p, kp), (q, kq) in product(zip(payloads, nodes), repeat=2):
        lhs = reference_leq(kp, kq)
        rhs = W.leq(frag, p, q) or leq_fin(S.order, frozenset((kp,)), W.supp(frag, q))
        if lhs != rhs:
            out.append(Violation("star", (kp, kq)))
    return out


# -- term literals (W = M only) ---------------------------------------------

def parse_term(text: str) -> Leaf | Node:
    """Parse ``leaf:<id>`` or ``node[t1;t2;...]`` with a multiset payload."""
    s = "".join(text.split())
    term, pos = _parse_term(s, 0)
    if pos != len(s):
        raise InputError(f"trailing input at {pos} in {text!r}")
    return term


def _parse_term(s, i):
    if s.startswith("leaf:", i):
        j = i + 5
        k = j
        while k < len(s) and (s[k].isalnum() or s[k] in "_-"):
            k += 1
        if k == j:
            raise InputError(f"empty leaf id at {i}")
        return Leaf(s[j:k]), k
    if s.startswith("node[", i):
        i += 5
        kids = []
        if i < len(s) and s[i] == "]":
            return Node((), Multiset()), i + 1
        while True:
            t, i = _parse_term(s, i)
            kids.append(t)
            if i < len(s) and s[i] == ";":
                i += 1
                continue
            if i < len(s) and s[i] == "]":
                return Node(kids, Multiset(kids)), i + 1
            raise InputError(f"expected ';' or ']' at {i}")
    raise InputError(f"expected 'leaf:' or 'node[' at {i}")
