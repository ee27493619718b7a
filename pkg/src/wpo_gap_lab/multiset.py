"""Finite multisets and the injection order on them."""

from __future__ import annotations

from typing import Callable, Sequence

from .canon import canon_key
from .errors import InputError
from .order import OrderMap, check_elements


class Multiset:
    """An unordered finite collection with multiplicity.

    Entries are kept in canonical order, so equality and hashing are
    independent of construction order.
    """

    __slots__ = ("entries", "sort_key", "_hash")

    def __init__(self, entries=()):
        keyed = sorted(((canon_key(e), e) for e in entries), key=lambda p: p[0])
        self.entries = tuple(e for _, e in keyed)
        self.sort_key = (20, len(keyed), tuple(k for k, _ in keyed))
        self._hash = hash(self.sort_key)

    def __eq__(self, other):
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._hash == other._hash and self.sort_key == other.sort_key

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return "[" + ",".join(map(str, self.entries)) + "]"


def injection_exists(xs: Sequence, ys: Sequence, leq: Callable) -> bool:
    """Is there an injection g with ``leq(xs[i], ys[g(i)])`` for all i?

    Maximum bipartite matching by augmenting paths.
    """
    m, n = len(xs), len(ys)
    if m > n:
        return False
    if m == 0:
        return True
    adj = [[j for j in range(n) if leq(x, ys[j])] for x in xs]
    if any(not row for row in adj):
        return False
    match_right = [-1] * n

    def augment(i, seen):
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_right[j] < 0 or augment(match_right[j], seen):
                match_right[j] = i
                return True
        return False

    for i in range(m):
        if not augment(i, [False] * n):
            return False
    return True


def ms_leq(P, sigma: Multiset, tau: Multiset) -> bool:
    check_elements(P, sigma.entries)
    check_elements(P, tau.entries)
    return injection_exists(sigma.entries, tau.entries, P.leq)


def ms_map(f: OrderMap, sigma: Multiset) -> Multiset:
    return Multiset(f(x) for x in sigma.entries)


def ms_supp(sigma: Multiset) -> frozenset:
    return frozenset(sigma.entries)


def multisets_up_to(elements: Sequence, budget: int, weight: Callable | None = None) -> list:
    """All multisets over ``elements`` whose entry weights sum to at most ``budget``.

    Weights must be positive; the default weight is 1 per entry.
    """
    if budget < 0:
        return []
    weight = weight or (lambda _: 1)
    items = [(e, weight(e)) for e in elements]
    items = [(e, w) for e, w in items if w <= budget]
    for e, w in items:
        if w < 1:
            raise InputError(f"non-positive weight {w} for {e!r}")
    out = []

    def grow(start, left, acc):
        out.append(Multiset(acc))
        for k in range(start, len(items)):
            e, w = items[k]
            if w <= left:
                acc.append(e)
                grow(k, left - w, acc)
                acc.pop()

    grow(0, budget, [])
    return out


def ms_enumerate(P, max_size: int) -> list:
    return multisets_up_to(P.elements, max_size)


def parse_multiset(text: str) -> Multiset:
    """Parse ``[e1,e2,...]``; whitespace is ignored, entries are identifiers."""
    s = "".join(text.split())
    if len(s) < 2 or s[0] != "[" or s[-1] != "]":
        raise InputError(f"multiset literal must look like [a,b]: {text!r}")
    body = s[1:-1]
    if not body:
        return Multiset()
    parts = body.split(",")
    if any(not p or not p.replace("_", "").replace("-", "").isalnum() for p in parts):
        raise InputError(f"bad multiset entry in {text!r}")
    return Multiset(parts)
