"""Finite partial orders, order maps and the domination order on finite subsets.

Elements are arbitrary hashable values (names for hand-built posets, trees or
terms for derived ones).  A :class:`Poset` is finite; an :class:`OrderView`
describes a possibly infinite order by its comparison and membership tests
and is only ever materialized through :meth:`OrderView.restrict`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple

from .canon import canon_sorted
from .errors import InputError

FinSubset = frozenset


class Violation(NamedTuple):
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law}: {' '.join(map(str, self.witness))}"


class Poset:
    """A finite carrier with an explicit or lazily computed order relation.

    ``relation`` is a set of pairs ``(x, y)`` meaning ``x <= y`` and is taken
    verbatim (no closure); use :meth:`from_covers` for generating relations.
    Alternatively ``leq`` supplies the order as a function, memoized per pair.
    """

    __slots__ = ("elements", "_members", "_rel", "_leq_fn", "_memo", "name", "_hash")

    def __init__(self, elements: Iterable[Hashable] = (), relation=None, *,
                 leq: Callable | None = None, name: str = "", memoize: bool = True):
        members = frozenset(elements)
        self.elements = canon_sorted(members)
        self._members = members
        self.name = name
        self._hash = None
        if leq is not None:
            self._rel = None
            self._leq_fn = leq
            self._memo = {} if memoize else None
        else:
            rel = frozenset(relation or ())
            for x, y in rel:
                if x not in members or y not in members:
                    raise InputError(f"relation mentions foreign element in ({x!r}, {y!r})")
            self._rel = rel
            self._leq_fn = None
            self._memo = None

    @classmethod
    def from_covers(cls, elements, covers=(), name=""):
        """Reflexive-transitive closure of ``covers``."""
        elements = list(elements)
        up = {x: {x} for x in elements}
        for x, y in covers:
            if x not in up or y not in up:
                raise InputError(f"cover ({x!r}, {y!r}) mentions foreign element")
            up[x].add(y)
        changed = True
        while changed:
            changed = False
            for x in elements:
                reach = set(up[x])
                for y in up[x]:
                    reach |= up[y]
                if reach != up[x]:
                    up[x] = reach
                    changed = True
        return cls(elements, {(x, y) for x in elements for y in up[x]}, name=name)

    @classmethod
    def from_leq(cls, elements, leq, name=""):
        return cls(elements, leq=leq, name=name)

    def leq(self, x, y) -> bool:
        if self._rel is not None:
            return (x, y) in self._rel
        if self._memo is None:
            return self._leq_fn(x, y)
        key = (x, y)
        r = self._memo.get(key)
        if r is None:
            r = self._memo[key] = bool(self._leq_fn(x, y))
        return r

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def relation(self) -> frozenset:
        if self._rel is None:
            self._rel = frozenset(
                (x, y) for x, y in product(self.elements, repeat=2) if self.leq(x, y))
        return self._rel

    def restrict(self, members) -> "Poset":
        """The induced suborder on ``members``."""
        members = frozenset(members)
        foreign = members - self._members
        if foreign:
            raise InputError(f"not elements of {self.name or 'poset'}: {sorted(map(str, foreign))}")
        if self._rel is not None:
            return Poset(members, {(x, y) for x, y in self._rel if x in members and y in members})
        return Poset(members, leq=self._leq_fn if self._memo is None else self.leq,
                     memoize=False)

    def __contains__(self, x) -> bool:
        try:
            return x in self._members
        except TypeError:
            return False

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self._members == other._members and self.relation() == other.relation()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._members)
        return self._hash

    def __repr__(self):
        label = self.name or "Poset"
        return f"<{label} {list(map(str, self.elements))}>"


class OrderView:
    """A possibly infinite order given by comparison and membership predicates.

    Used for W(X) and term orders, which cannot be materialized.  Hashes by
    identity; memoizes comparisons.
    """

    __slots__ = ("_leq_fn", "_contains_fn", "name", "_memo")

    def __init__(self, leq: Callable, contains: Callable, name: str = "",
                 memoize: bool = True):
        self._leq_fn = leq
        self._contains_fn = contains
        self.name = name
        self._memo = {} if memoize else None

    def leq(self, x, y) -> bool:
        if self._memo is None:
            return self._leq_fn(x, y)
        key = (x, y)
        r = self._memo.get(key)
        if r is None:
            r = self._memo[key] = bool(self._leq_fn(x, y))
        return r

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def __contains__(self, x) -> bool:
        return bool(self._contains_fn(x))

    def restrict(self, members) -> Poset:
        members = frozenset(members)
        for m in members:
            if not self._contains_fn(m):
                raise InputError(f"{m} is not an element of {self.name}")
        return Poset(members, leq=self.leq, memoize=False)

    def __repr__(self):
        return f"<OrderView {self.name}>"


def chain(*names, name=None) -> Poset:
    return Poset.from_covers(names, zip(names, names[1:]), name=name or f"chain{len(names)}")


def antichain(*names, name=None) -> Poset:
    return Poset.from_covers(names, (), name=name or f"antichain{len(names)}")


EMPTY = Poset((), (), name="empty")


def check_elements(P, values, what="element"):
    for v in values:
        if v not in P:
            raise InputError(f"foreign {what} {v!r}")


def poset_validate(P: Poset) -> list[Violation]:
    """Every witness of failed reflexivity, antisymmetry or transitivity."""
    out = []
    els = P.elements
    for x in els:
        if not P.leq(x, x):
            out.append(Violation("reflexivity", (x,)))
    for i, x in enumerate(els):
        for y in els[i + 1:]:
            if P.leq(x, y) and P.leq(y, x):
                out.append(Violation("antisymmetry", (x, y)))
    up = {x: [y for y in els if P.leq(x, y)] for x in els}
    for x in els:
        for y in up[x]:
            for z in up[y]:
                if not P.leq(x, z):
                    out.append(Violation("transitivity", (x, y, z)))
    return out


def leq_fin(P, a, b) -> bool:
    """``a <=fin b``: every member of ``a`` lies below some member of ``b``."""
    check_elements(P, a)
    check_elements(P, b)
    return all(any(P.leq(x, y) for y in b) for x in a)


@dataclass(frozen=True, eq=False)
class OrderMap:
    """A total map between orders, claimed to be a quasi embedding or embedding.

    ``assign`` is a mapping over a finite source, or a function when the
    source is an :class:`OrderView`.
    """

    source: object
    target: object
    assign: Mapping | Callable
    kind: str = "quasi"

    def __post_init__(self):
        if self.kind not in ("quasi", "embedding"):
            raise InputError(f"unknown map kind {self.kind!r}")
        table = isinstance(self.assign, Mapping)
        object.__setattr__(self, "_table", table)
        if table and isinstance(self.source, Poset):
            if set(self.assign) != set(self.source.elements):
                raise InputError("assignment is not total on the source")
            for v in self.assign.values():
                if v not in self.target:
                    raise InputError(f"image {v!r} is not in the target")

    def __call__(self, x):
        if self._table:
            try:
                return self.assign[x]
            except KeyError:
                raise InputError(f"{x!r} is not in the source of the map") from None
        return self.assign(x)

    def range(self) -> frozenset:
        return frozenset(self(x) for x in self.source.elements)

    def then(self, g: "OrderMap") -> "OrderMap":
        """``g o self``."""
        kind = "embedding" if self.kind == g.kind == "embedding" else "quasi"
        if isinstance(self.source, Poset):
            return OrderMap(self.source, g.target, {x: g(self(x)) for x in self.source}, kind)
        return OrderMap(self.source, g.target, lambda x: g(self(x)), kind)


def identity_map(P) -> OrderMap:
    if isinstance(P, Poset):
        return OrderMap(P, P, {x: x for x in P}, "embedding")
    return OrderMap(P, P, lambda x: x, "embedding")


def inclusion(P, a) -> OrderMap:
    """The inclusion of the induced suborder on ``a`` into ``P``."""
    sub = P.restrict(a)
    return OrderMap(sub, P, {x: x for x in sub.elements}, "embedding")


def image_fin(f: OrderMap, a) -> frozenset:
    if isinstance(f.source, Poset):
        check_elements(f.source, a)
    return frozenset(f(x) for x in a)


def map_validate(f: OrderMap) -> list[Violation]:
    out = []
    src, tgt = f.source, f.target
    for x, y in product(src.elements, repeat=2):
        fx, fy = f(x), f(y)
        if tgt.leq(fx, fy) and not src.leq(x, y):
            out.append(Violation("quasi-embedding", (x, y)))
        if f.kind == "embedding" and src.leq(x, y) and not tgt.leq(fx, fy):
            out.append(Violation("embedding", (x, y)))
    if f.kind == "embedding":
        seen = {}
        for x in src.elements:
            fx = f(x)
            if fx in seen:
                out.append(Violation("injectivity", (seen[fx], x)))
            seen[fx] = x
    return out


# -- text format -----------------------------------------------------------

def parse_poset(text: str) -> Poset:
    """Parse ``poset <name>`` / ``elem <id>`` / ``le <id> <id>`` lines.

    The ``le`` facts are closed reflexively and transitively; a cycle between
    distinct elements is rejected.
    """
    name = None
    elems: list[str] = []
    covers = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "poset" and len(parts) == 2 and name is None:
            name = parts[1]
        elif head == "elem" and len(parts) == 2:
            if parts[1] in elems:
                raise InputError(f"line {lineno}: duplicate element {parts[1]}")
            elems.append(parts[1])
        elif head == "le" and len(parts) == 3:
            covers.append((parts[1], parts[2]))
        else:
            raise InputError(f"line {lineno}: cannot parse {raw!r}")
    if name is None:
        raise InputError("missing 'poset <name>' header")
    P = Poset.from_covers(elems, covers, name=name)
    bad = [v for v in poset_validate(P) if v.law == "antisymmetry"]
    if bad:
        raise InputError(f"not antisymmetric: {bad[0]}")
    return P


def format_poset(P: Poset) -> str:
    lines = [f"poset {P.name or 'P'}"]
    lines += [f"elem {x}" for x in P.elements]
    lines += [f"le {x} {y}" for x in P.elements for y in P.elements if x != y and P.leq(x, y)]
    return "\n".join(lines) + "\n"
