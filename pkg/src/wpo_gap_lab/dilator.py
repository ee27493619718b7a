"""PO-dilators as runtime descriptors, with combinators and law checkers.

A dilator bundles five operations on payloads:

``leq(P, s, t)``      order on W(P)
``map(f, s)``         action of an order map f
``supp(P, s)``        finite support, a subset of P
``enumerate(P, budget, weight=None)``
                      all payloads of structural size <= budget, where each
                      element x of P costs ``weight(x)`` (default 1)
``size(s, weight)``   that structural size
``member(P, s)``      is s a payload over P?

Payloads mention elements of P by value, so the action of an inclusion is
the identity on payloads.  W(P) itself is available as an infinite
:class:`OrderView` through :func:`order_of`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable

from .errors import DilatorLawError, InputError
from .multiset import (Multiset, injection_exists, ms_map, ms_supp,
                       multisets_up_to)
from .order import (OrderMap, OrderView, Poset, Violation, identity_map,
                    image_fin, inclusion, leq_fin, poset_validate)


def unit_weight(_):
    return 1


@dataclass(frozen=True, eq=False)
class Dilator:
    name: str
    leq: Callable
    map: Callable
    supp: Callable
    enumerate: Callable
    size: Callable
    member: Callable
    normal: bool = True

    def __repr__(self):
        return f"<Dilator {self.name}>"


@dataclass(frozen=True)
class DValue:
    """A payload together with the dilator and carrier it lives over."""

    dilator: Dilator
    carrier: object
    payload: object

    def supp(self) -> frozenset:
        return self.dilator.supp(self.carrier, self.payload)


@lru_cache(maxsize=4096)
def order_of(W: Dilator, P) -> OrderView:
    """W(P) as an order view."""
    return OrderView(lambda s, t: W.leq(P, s, t), lambda s: W.member(P, s),
                     name=f"{W.name}({getattr(P, 'name', '') or '?'})")


def lift_map(W: Dilator, f: OrderMap) -> OrderMap:
    """W(f) as an order map between the views W(source) and W(target)."""
    return OrderMap(order_of(W, f.source), order_of(W, f.target),
                    lambda s: W.map(f, s), f.kind)


def normal_form(sigma: DValue) -> tuple[frozenset, DValue]:
    """Return ``(a, sigma0)`` with sigma = W(incl_a)(sigma0) and supp(sigma0) = a."""
    W, P, s = sigma.dilator, sigma.carrier, sigma.payload
    a = frozenset(W.supp(P, s))
    try:
        incl = inclusion(P, a)
    except InputError as exc:
        raise DilatorLawError(f"{W.name}: support of {s} leaves the carrier") from exc
    sub = incl.source
    if not W.member(sub, s):
        raise DilatorLawError(f"{W.name}: {s} cannot be pulled back to its support")
    if W.map(incl, s) != s:
        raise DilatorLawError(f"{W.name}: inclusion does not fix {s}")
    if frozenset(W.supp(sub, s)) != a:
        raise DilatorLawError(f"{W.name}: support of the pullback of {s} is not {set(a)}")
    return a, DValue(W, sub, s)


# -- shipped dilators -------------------------------------------------------

def identity_dilator() -> Dilator:
    return _IDENTITY


def _id_enumerate(P, budget, weight=None):
    weight = weight or unit_weight
    return [x for x in P.elements if weight(x) <= budget]


_IDENTITY = Dilator(
    name="id",
    leq=lambda P, s, t: P.leq(s, t),
    map=lambda f, s: f(s),
    supp=lambda P, s: frozenset((s,)),
    enumerate=_id_enumerate,
    size=lambda s, weight: weight(s),
    member=lambda P, s: s in P,
)


def _ms_member(P, s):
    return isinstance(s, Multiset) and all(x in P for x in s.entries)


def _ms_leq(P, s, t):
    if not (_ms_member(P, s) and _ms_member(P, t)):
        raise InputError(f"multisets {s}, {t} are not over the carrier")
    return injection_exists(s.entries, t.entries, P.leq)


MULTISET = Dilator(
    name="M",
    leq=_ms_leq,
    map=ms_map,
    supp=lambda P, s: ms_supp(s),
    enumerate=lambda P, budget, weight=None: multisets_up_to(P.elements, budget, weight),
    size=lambda s, weight: sum(weight(x) for x in s.entries),
    member=_ms_member,
)


def multiset_dilator() -> Dilator:
    return MULTISET


@lru_cache(maxsize=None)
def compose(V: Dilator, W: Dilator) -> Dilator:
    """``V o W``: V-payloads whose entries are W-payloads over the base order."""

    def leq(P, s, t):
        return V.leq(order_of(W, P), s, t)

    def map_(f, s):
        return V.map(lift_map(W, f), s)

    def supp(P, s):
        out = set()
        for w in V.supp(order_of(W, P), s):
            out |= W.supp(P, w)
        return frozenset(out)

    # an inner payload costs at least 1, so that e.g. [[], [], ...] stays finite
    def enumerate_(P, budget, weight=None):
        weight = weight or unit_weight
        inner = W.enumerate(P, budget, weight)
        Q = order_of(W, P).restrict(inner)
        return V.enumerate(Q, budget, lambda w: max(1, W.size(w, weight)))

    def size(s, weight):
        return V.size(s, lambda w: max(1, W.size(w, weight)))

    def member(P, s):
        return V.member(order_of(W, P), s)

    return Dilator(f"compose({V.name},{W.name})", leq, map_, supp, enumerate_,
                   size, member, V.normal and W.normal)


# -- law checkers -----------------------------------------------------------

def check_support_condition(W: Dilator, f: OrderMap, budget: int) -> list[Violation]:
    """supp(t) within rng(f) iff t has a W(f)-preimage, over the enumerated t."""
    rng = f.range()
    images = {W.map(f, s) for s in W.enumerate(f.source, budget)}
    out = []
    for t in W.enumerate(f.target, budget):
        inside = W.supp(f.target, t) <= rng
        if inside != (t in images):
            out.append(Violation("support-condition", (t,)))
    return out


def check_normality(W: Dilator, P, budget: int) -> list[Violation]:
    vals = W.enumerate(P, budget)
    supps = [W.supp(P, v) for v in vals]
    out = []
    for i, j in product(range(len(vals)), repeat=2):
        if W.leq(P, vals[i], vals[j]) and not leq_fin(P, supps[i], supps[j]):
            out.append(Violation("normality", (vals[i], vals[j])))
    return out


def check_naturality_supp(W: Dilator, f: OrderMap, budget: int) -> list[Violation]:
    out = []
    for s in W.enumerate(f.source, budget):
        lhs = W.supp(f.target, W.map(f, s))
        rhs = image_fin(f, W.supp(f.source, s))
        if lhs != rhs:
            out.append(Violation("supp-naturality", (s,)))
    return out


def check_functoriality(W: Dilator, f: OrderMap, g: OrderMap, budget: int) -> list[Violation]:
    """Identity and composition laws, and that W(f) is a (quasi) embedding like f."""
    out = []
    vals = W.enumerate(f.source, budget)
    ident = identity_map(f.source)
    gf = f.then(g)
    for s in vals:
        if W.map(ident, s) != s:
            out.append(Violation("identity", (s,)))
        if W.map(gf, s) != W.map(g, W.map(f, s)):
            out.append(Violation("composition", (s,)))
    imgs = [W.map(f, s) for s in vals]
    P, Q = f.source, f.target
    for i, j in product(range(len(vals)), repeat=2):
        lo, hi = W.leq(Q, imgs[i], imgs[j]), W.leq(P, vals[i], vals[j])
        if lo and not hi:
            out.append(Violation("quasi-embedding", (vals[i], vals[j])))
        if f.kind == "embedding" and hi and not lo:
            out.append(Violation("embedding", (vals[i], vals[j])))
    return out


def check_partial_order(leq: Callable, universe) -> list[Violation]:
    """Reflexivity, antisymmetry and transitivity of ``leq`` on a finite universe."""
    return poset_validate(Poset(universe, leq=leq))
