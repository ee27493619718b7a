"""Exhaustive property suites over small universes, and the budgets that size them."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field, fields, replace
from itertools import product
from pathlib import Path

from .dilator import (MULTISET, check_functoriality, check_naturality_supp,
                      check_normality, check_support_condition, compose,
                      identity_dilator)
from .errors import BudgetError, InputError
from .gaptrees import (GapParams, gap_dilator, gap_leq, gap_fixed_point, gap_height, gap_map,
                       gap_minus_dilator, gap_order, gap_size, enumerate_gap_trees,
                       minus_order, pi, pi_inv, zero_subtree_check)
from .kruskal import (check_fixed_point_axioms, check_initiality_witness, derivative,
                      enumerate_terms, fold_initial, self_target, star_check,
                      term_height, term_system)
from .multiset import injection_exists, multisets_up_to
from .oracle import (gap_embed, gaptree_of_term, ms_leq_oracle, nodetree_of_gaptree,
                     plain_embeds, recheck_witness)
from .order import (EMPTY, OrderMap, Poset, Violation, antichain, chain, poset_validate)

# -- the order catalog --------------------------------------------------------

CATALOG = {
    "empty": EMPTY,
    "point": chain("x", name="point"),
    "chain2": chain("x", "y", name="chain2"),
    "antichain2": antichain("u", "v", name="antichain2"),
    "vee3": Poset.from_covers(["b", "l", "r"], [("b", "l"), ("b", "r")], name="vee3"),
    "chain3": chain("x", "y", "z", name="chain3"),
    "antichain3": antichain("u", "v", "w", name="antichain3"),
}


def catalog_maps():
    """Named order maps between catalog orders: (name, f, g) with g after f."""
    P, C2, A2, V3 = (CATALOG[k] for k in ("point", "chain2", "antichain2", "vee3"))
    incl = OrderMap(P, C2, {"x": "x"}, "embedding")
    top = OrderMap(P, C2, {"x": "y"}, "embedding")
    c_to_v = OrderMap(C2, V3, {"x": "b", "y": "l"}, "embedding")
    a_to_v = OrderMap(A2, V3, {"u": "l", "v": "r"}, "embedding")
    c_to_a = OrderMap(C2, A2, {"x": "u", "y": "v"}, "quasi")
    return [
        ("point>chain2>vee3", incl, c_to_v),
        ("top>chain2>vee3", top, c_to_v),
        ("chain2>antichain2>vee3", c_to_a, a_to_v),
    ]


# -- reports and budgets --------------------------------------------------------

@dataclass
class SuiteReport:
    suite: str
    checked: int = 0
    violations: list = field(default_factory=list)
    millis: int = 0
    incomplete: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.violations and not self.incomplete

    @property
    def status(self) -> str:
        if self.violations:
            return "fail"
        if self.incomplete:
            return "incomplete"
        return "vacuous" if self.checked == 0 else "pass"

    def add(self, where: str, found):
        for v in found:
            self.violations.append(f"{where}: {v}")

    def to_dict(self) -> dict:
        return {"suite": self.suite, "checked": self.checked,
                "violations": sorted(self.violations), "millis": self.millis,
                "status": self.status, **({"note": self.note} if self.note else {})}

    def line(self) -> str:
        return (f"{self.status.upper():10} {self.suite:16} checked={self.checked} "
                f"violations={len(self.violations)} {self.millis}ms")


@dataclass(frozen=True)
class Budget:
    """Bounds for every suite; the defaults are the acceptance run."""

    name: str = "default"
    catalog: tuple = ("empty", "point", "chain2", "antichain2", "vee3")
    # gap universes: nodes per n over the empty order, and over nonempty X
    gap_nodes: tuple = ((1, 5), (2, 4), (3, 4))
    gap_nodes_x: int = 3
    # term universes for W = M
    term_height: int = 2
    term_payload: int = 3
    term_size_x: int = 6
    # multiset oracle
    ms_posets: tuple = ("point", "chain2", "antichain2", "chain3", "antichain3", "vee3")
    ms_size: int = 3
    # fixed point axioms: fragment size and payload budget
    fp_n: tuple = (0, 1)
    fp_term_size: int = 3
    fp_gap_nodes: int = 3
    fp_payload: int = 2
    # dilator laws
    law_budget: int = 3
    law_budget_deriv: int = 5
    # star and zero subtrees
    star_term_size: int = 3
    star_payload: int = 3
    # pi and pipeline
    pi_n: tuple = (0, 1)
    pipeline_n: tuple = (0, 1)
    pipeline_x: tuple = ("empty", "chain2")

    def gap_bound(self, n: int, xname: str) -> int:
        if xname != "empty":
            return self.gap_nodes_x
        for k, v in self.gap_nodes:
            if k == n:
                return v
        return 0

    def orders(self):
        return [(k, CATALOG[k]) for k in self.catalog]


ZERO = Budget(name="zero", catalog=(), gap_nodes=(), gap_nodes_x=0, term_height=0,
              term_payload=0, term_size_x=0, ms_posets=(), ms_size=0, fp_n=(),
              fp_term_size=0, fp_gap_nodes=0, fp_payload=0, law_budget=0,
              law_budget_deriv=0, star_term_size=0, star_payload=0, pi_n=(),
              pipeline_n=(), pipeline_x=())

NAMED_BUDGETS = {"default": Budget(), "zero": ZERO}


def load_budget(source: str) -> Budget:
    """A named budget, or a JSON file overriding fields of the default one."""
    if source in NAMED_BUDGETS:
        return NAMED_BUDGETS[source]
    path = Path(source)
    if not path.is_file():
        raise InputError(f"unknown budget {source!r}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: {exc}") from None
    known = {f.name for f in fields(Budget)}
    extra = set(raw) - known
    if extra:
        raise InputError(f"unknown budget fields: {sorted(extra)}")
    for k, v in raw.items():
        if isinstance(v, list):
            raw[k] = tuple(tuple(e) if isinstance(e, list) else e for e in v)
        if isinstance(v, int) and v < 0:
            raise InputError(f"budget field {k} must be >= 0")
    for k in raw.get("catalog", ()) + raw.get("ms_posets", ()) + raw.get("pipeline_x", ()):
        if k not in CATALOG:
            raise InputError(f"unknown catalog order {k!r}")
    return replace(Budget(), name=raw.pop("name", path.stem), **raw)


def budget_dict(b: Budget) -> dict:
    return asdict(b)


def _timed(name, body) -> SuiteReport:
    rep = SuiteReport(name)
    t0 = time.perf_counter()
    try:
        body(rep)
    except BudgetError as exc:
        rep.incomplete = True
        rep.note = str(exc)
    rep.millis = int((time.perf_counter() - t0) * 1000)
    return rep


# -- universes ------------------------------------------------------------------

def gap_universe(n: int, X, nodes: int) -> list:
    return enumerate_gap_trees(GapParams(n, X), nodes)


def term_universe(budget: Budget, xname: str) -> list:
    S = term_system(CATALOG[xname], MULTISET)
    terms = enumerate_terms(S, budget.term_height, budget.term_payload)
    if xname != "empty":
        terms = [t for t in terms if S.size(t) <= budget.term_size_x]
    return terms


def gap_universes(budget: Budget):
    for xname, X in budget.orders():
        for n, _ in budget.gap_nodes:
            N = budget.gap_bound(n, xname)
            yield f"T{n}({xname},{N})", n, X, gap_universe(n, X, N)


# -- suites ---------------------------------------------------------------------

def _pairs_report(rep, where, universe, leq):
    P = Poset(universe, leq=leq)
    rep.checked += len(universe) ** 2
    rep.add(where, poset_validate(P))


def suite_partial_order(budget: Budget) -> SuiteReport:
    """Partial-order axioms and height monotonicity on every default universe."""

    def body(rep):
        for where, n, X, trees in gap_universes(budget):
            order = gap_order(n, X)
            _pairs_report(rep, where, trees, order.leq)
            params = GapParams(n, X)
            for s, t in product(trees, repeat=2):
                if order.leq(s, t) and gap_height(params, s) > gap_height(params, t):
                    rep.violations.append(f"{where}: height {s} {t}")
        for xname, X in budget.orders():
            terms = term_universe(budget, xname)
            S = term_system(X, MULTISET)
            where = f"TM({xname})"
            _pairs_report(rep, where, terms, S.leq)
            for s, t in product(terms, repeat=2):
                if S.leq(s, t) and term_height(s) > term_height(t):
                    rep.violations.append(f"{where}: height {s} {t}")

    return _timed("partial-order", body)


def suite_partial_order_on(name, leq, universe) -> SuiteReport:
    """Partial-order axioms for an arbitrary comparison on a finite universe."""
    return _timed(name, lambda rep: _pairs_report(rep, name, list(universe), leq))


def suite_gap_oracle(budget: Budget) -> SuiteReport:
    """Recursive gap order against brute-force gap embeddings, X empty."""

    def body(rep):
        for n, N in budget.gap_nodes:
            trees = gap_universe(n, EMPTY, N)
            node = {t: nodetree_of_gaptree(t) for t in trees}
            order = gap_order(n, EMPTY)
            for s, t in product(trees, repeat=2):
                rep.checked += 1
                w = gap_embed(n, node[s], node[t])
                if order.leq(s, t) != (w is not None):
                    rep.violations.append(f"n={n}: {s} {t} recursive={order.leq(s, t)}")
                elif w is not None and not recheck_witness(n, node[s], node[t], w):
                    rep.violations.append(f"n={n}: witness {w} for {s} {t} fails recheck")

    return _timed("gap-oracle", body)


def suite_ms_oracle(budget: Budget) -> SuiteReport:
    def body(rep):
        for pname in budget.ms_posets:
            P = CATALOG[pname]
            univ = multisets_up_to(P.elements, budget.ms_size)
            for s, t in product(univ, repeat=2):
                rep.checked += 1
                if injection_exists(s.entries, t.entries, P.leq) != ms_leq_oracle(P, s, t):
                    rep.violations.append(f"{pname}: {s} {t}")

    return _timed("ms-oracle", body)


def suite_term_oracle(budget: Budget) -> SuiteReport:
    """Term order over (M, empty) against plain tree embeddings."""

    def body(rep):
        if "empty" not in budget.catalog:
            return
        S = term_system(EMPTY, MULTISET)
        terms = term_universe(budget, "empty")
        node = {t: nodetree_of_gaptree(gaptree_of_term(t)) for t in terms}
        for s, t in product(terms, repeat=2):
            rep.checked += 1
            if S.leq(s, t) != plain_embeds(node[s], node[t]):
                rep.violations.append(f"{s} {t}")

    return _timed("term-oracle", body)


def suite_fixed_point(budget: Budget) -> SuiteReport:
    def body(rep):
        for xname, X in budget.orders():
            S = term_system(X, MULTISET)
            frag = S.enumerate_by_size(budget.fp_term_size)
            target = self_target(S)
            found = check_fixed_point_axioms(MULTISET, X, target, frag, budget.fp_payload)
            found += check_initiality_witness(MULTISET, target, term_height, frag,
                                              budget.fp_payload)
            rep.checked += len(frag)
            rep.add(f"TM({xname})", found)
            for n in budget.fp_n:
                W = compose(MULTISET, gap_dilator(n))
                frag = enumerate_gap_trees(GapParams(n + 1, X), budget.fp_gap_nodes, minus=True)
                target = gap_fixed_point(n, X)
                params = GapParams(n + 1, X)
                found = check_fixed_point_axioms(W, X, target, frag, budget.fp_payload)
                found += check_initiality_witness(W, target, lambda t: gap_height(params, t),
                                                  frag, budget.fp_payload)
                rep.checked += len(frag)
                rep.add(f"Tminus{n + 1}({xname})", found)

    return _timed("fixed-point", body)


def law_dilators(budget: Budget):
    """(dilator, budget) pairs covered by the law suite."""
    out = [(identity_dilator(), budget.law_budget), (MULTISET, budget.law_budget)]
    out += [(gap_dilator(n), budget.law_budget) for n in range(4)]
    out += [(gap_minus_dilator(n), budget.law_budget) for n in range(1, 4)]
    out += [(compose(MULTISET, gap_dilator(1)), budget.law_budget),
            (compose(gap_dilator(1), gap_minus_dilator(2)), budget.law_budget),
            (compose(MULTISET, MULTISET), budget.law_budget),
            (derivative(MULTISET), budget.law_budget_deriv)]
    return out


def suite_dilator_laws(budget: Budget) -> SuiteReport:
    def body(rep):
        if not budget.catalog:
            return
        maps = catalog_maps()
        for W, b in law_dilators(budget):
            for xname, X in budget.orders():
                rep.checked += 1
                rep.add(f"{W.name} normality {xname}", check_normality(W, X, b))
            for mname, f, g in maps:
                rep.checked += 1
                if f.kind == "embedding":
                    rep.add(f"{W.name} support {mname}", check_support_condition(W, f, b))
                if g.kind == "embedding":
                    rep.add(f"{W.name} support {mname}", check_support_condition(W, g, b))
                rep.add(f"{W.name} naturality {mname}", check_naturality_supp(W, f, b))
                rep.add(f"{W.name} functoriality {mname}", check_functoriality(W, f, g, b))

    return _timed("dilator-laws", body)


def suite_star(budget: Budget) -> SuiteReport:
    """The two-disjunct characterization of kappa comparisons for M over the empty order."""

    def body(rep):
        if not budget.star_term_size:
            return
        S = term_system(EMPTY, MULTISET)
        frag = S.enumerate_by_size(budget.star_term_size)
        memo = {}

        def reference(s, t):
            for u in (s, t):
                if u not in memo:
                    memo[u] = nodetree_of_gaptree(gaptree_of_term(u))
            return plain_embeds(memo[s], memo[t])

        n_pay = len(MULTISET.enumerate(S.order.restrict(frag), budget.star_payload))
        rep.checked += n_pay ** 2
        rep.add("star", star_check(S, frag, budget.star_payload, reference))

    return _timed("star", body)


def composite_universe(n: int, X, N: int) -> list:
    """Elements of T_n o T_{n+1}^-(X) with at most N nodes after unravelling."""
    inner = enumerate_gap_trees(GapParams(n + 1, X), N, minus=True)
    frag = minus_order(n + 1, X).restrict(inner)
    return gap_dilator(n).enumerate(frag, N, gap_size)


def suite_zero_subtrees(budget: Budget) -> SuiteReport:
    def body(rep):
        for n in budget.pi_n:
            for xname, X in budget.orders():
                N = budget.gap_bound(n + 1, xname)
                minus = enumerate_gap_trees(GapParams(n + 1, X), N, minus=True)
                for s, t in product(minus, composite_universe(n, X, N)):
                    rep.checked += 1
                    lhs, rhs = zero_subtree_check(n, X, s, t)
                    if lhs != rhs:
                        rep.violations.append(f"n={n} {xname}: {s} {t}")

    return _timed("zero-subtrees", body)


def pi_violations(n: int, X, N: int) -> tuple[int, list]:
    """Bijectivity and order agreement of pi between matched universes."""
    out = []
    comp = composite_universe(n, X, N)
    target = gap_universe(n + 1, X, N)
    images = [pi(n, X, s) for s in comp]
    if len(set(images)) != len(images):
        out.append(Violation("pi-injective", (n,)))
    if set(images) != set(target):
        out.append(Violation("pi-onto", (len(images), len(target))))
    for s, t in zip(comp, images):
        if pi_inv(n, X, t) != s:
            out.append(Violation("pi-inverse", (s,)))
    W = compose(gap_dilator(n), gap_minus_dilator(n + 1))
    big = gap_order(n + 1, X)
    for (s, ps), (t, pt) in product(zip(comp, images), repeat=2):
        if W.leq(X, s, t) != big.leq(ps, pt):
            out.append(Violation("pi-order", (s, t)))
    return len(comp) ** 2, out


def pi_naturality(n: int, f: OrderMap, N: int) -> list:
    W = compose(gap_dilator(n), gap_minus_dilator(n + 1))
    out = []
    for s in composite_universe(n, f.source, N):
        lhs = pi(n, f.target, W.map(f, s))
        rhs = gap_map(GapParams(n + 1, f.target), f, pi(n, f.source, s))
        if lhs != rhs:
            out.append(Violation("pi-naturality", (s,)))
    return out


def suite_pi(budget: Budget) -> SuiteReport:
    def body(rep):
        for n in budget.pi_n:
            for xname, X in budget.orders():
                N = budget.gap_bound(n + 1, xname)
                checked, found = pi_violations(n, X, N)
                rep.checked += checked
                rep.add(f"n={n} {xname}", found)
            if budget.catalog:
                for mname, f, g in catalog_maps():
                    for h in (f, g):
                        rep.checked += 1
                        rep.add(f"n={n} {mname}", pi_naturality(n, h, budget.gap_nodes_x))

    return _timed("pi-iso", body)


def pipeline_violations(n: int, X, N: int) -> tuple[int, list]:
    """Fold the generic derivative of M o T_n onto T_{n+1}^-(X) and compare."""
    D = derivative(compose(MULTISET, gap_dilator(n)))
    S = term_system(X, compose(MULTISET, gap_dilator(n)))
    generic = D.enumerate(X, N)
    target = gap_fixed_point(n, X)
    memo: dict = {}
    images = [fold_initial(S, target, s, memo) for s in generic]
    concrete = enumerate_gap_trees(GapParams(n + 1, X), N, minus=True)
    out = []
    if len(generic) != len(concrete):
        out.append(Violation("cardinality", (len(generic), len(concrete))))
    if len(set(images)) != len(images):
        out.append(Violation("fold-injective", (n,)))
    if set(images) != set(concrete):
        missing = sorted(set(concrete) - set(images))[:3]
        out.append(Violation("fold-onto", tuple(missing)))
    big = gap_order(n + 1, X)
    for (s, fs), (t, ft) in product(zip(generic, images), repeat=2):
        if S.leq(s, t) != big.leq(fs, ft):
            out.append(Violation("fold-order", (s, t)))
    return len(generic) ** 2, out


def suite_pipeline(budget: Budget) -> SuiteReport:
    def body(rep):
        for n in budget.pipeline_n:
            for xname in budget.pipeline_x:
                X = CATALOG[xname]
                N = budget.gap_bound(n + 1, xname)
                checked, found = pipeline_violations(n, X, N)
                rep.checked += checked
                rep.add(f"n={n} {xname}", found)
                checked, found = pi_violations(n, X, N)
                rep.checked += checked
                rep.add(f"pi n={n} {xname}", found)

    return _timed("pipeline", body)


SUITES = {
    "partial-order": suite_partial_order,
    "gap-oracle": suite_gap_oracle,
    "ms-oracle": suite_ms_oracle,
    "term-oracle": suite_term_oracle,
    "fixed-point": suite_fixed_point,
    "dilator-laws": suite_dilator_laws,
    "star": suite_star,
    "zero-subtrees": suite_zero_subtrees,
    "pi-iso": suite_pi,
    "pipeline": suite_pipeline,
}


def suite_all(budget: Budget, only=None) -> list[SuiteReport]:
    names = list(SUITES) if not only else list(only)
    for name in names:
        if name not in SUITES:
            raise InputError(f"unknown suite {name!r}")
    return [SUITES[name](budget) for name in names]


def good_pair(seq, params: GapParams):
    """The lexicographically least (i, j), i < j, with seq[i] <= seq[j], or None."""
    for i, s in enumerate(seq):
        for j in range(i + 1, len(seq)):
            if gap_leq(params, s, seq[j]):
                return i, j
    return None
