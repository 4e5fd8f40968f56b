"""Suites comparing closed forms against exhaustive search, and oracles against each other.

A suite is a function returning a list of ``CaseSpec``.  The runner only
evaluates them, so adding cases never touches ``run_suite``.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import families as fam
from .formulas import (
    corollary_family_formula,
    cycle_formula,
    grid_lower_bound_witness,
    grid_witness_vertices,
    join_formula,
    join_somega,
    lex_cycle_complete_formula,
    lex_gp_formula,
    lex_lower_bound,
    path_cycle_sjc_formula,
    split_lower_bound,
    tree_formula,
)
from .graph import Graph, clique_number, is_connected, vertex_connectivity
from .rng import Xoshiro256, random_graph, random_split, random_tree
from .search import (
    Budget,
    gp,
    is_k_sgp,
    monotonicity_probe,
    naive_is_k_sgp,
    sgp,
    sjc,
    somega,
)
from .steiner import INF, naive_steiner_distance, steiner_distance, steiner_table

MATCH, BOUND, MISMATCH, SKIPPED = "match", "bound-holds", "mismatch", "skipped-budget"
VERDICTS = (MATCH, BOUND, MISMATCH, SKIPPED)


class TruncatedSearch(Exception):
    """Raised by a case computation whose search hit its budget."""


@dataclass
class SuiteConfig:
    max_n: int | None = None
    seed: int = 20211
    k: int | None = None
    count: int | None = None
    budget_nodes: int | None = None
    budget_seconds: float | None = None

    def budget(self, max_vertices: int = 12) -> Budget:
        return Budget(self.budget_nodes, self.budget_seconds, max_vertices)


@dataclass
class CaseSpec:
    descriptor: str
    source: str
    expected: Callable[[], object]
    computed: Callable[[], object]
    relation: str = "eq"  # "eq", or "le": expected is a lower bound on computed


@dataclass
class CaseResult:
    descriptor: str
    source: str
    expected: object
    computed: object
    verdict: str


@dataclass
class SuiteReport:
    suite: str
    config: dict
    cases: list[CaseResult] = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def summary(self) -> dict:
        counts = {v: 0 for v in VERDICTS}
        for c in self.cases:
            counts[c.verdict] += 1
        counts["total"] = len(self.cases)
        return counts

    @property
    def passed(self) -> bool:
        return all(c.verdict != MISMATCH for c in self.cases)

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "config": self.config,
            "cases": [asdict(c) for c in self.cases],
            "summary": self.summary,
            "passed": self.passed,
        }
        if include_timing:
            out["timing"] = self.timing
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True, default=_jsonable)

    def to_text(self) -> str:
        rows = [("descriptor", "source", "expected", "computed", "verdict")]
        rows += [(c.descriptor, c.source, _show(c.expected), _show(c.computed), c.verdict) for c in self.cases]
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
        s = self.summary
        lines.append(
            f"{self.suite}: {s['total']} cases, {s[MATCH]} match, {s[BOUND]} bound-holds, "
            f"{s[MISMATCH]} mismatch, {s[SKIPPED]} skipped-budget -> {'PASS' if self.passed else 'FAIL'}"
        )
        return "\n".join(lines)


def _jsonable(x):
    if x is INF:
        return "inf"
    if isinstance(x, tuple):
        return list(x)
    return str(x)


def _show(x) -> str:
    return "inf" if x is INF else str(x)


def _value(result):
    """Unwrap an InvariantResult/FormulaResult, refusing truncated ones."""
    stats = getattr(result, "stats", None)
    if (stats is not None and stats.truncated) or getattr(result, "truncated", False):
        raise TruncatedSearch
    return result.value


# ------------------------------------------------------------------ corpora


def join_corpus() -> dict[str, Graph]:
    """Twelve small named graphs (at most five vertices), some disconnected."""
    return {
        "K1": fam.complete(1),
        "K2": fam.complete(2),
        "2K1": fam.empty(2),
        "P3": fam.path(3),
        "K3": fam.complete(3),
        "3K1": fam.empty(3),
        "K2+K1": Graph.from_edges(3, [(0, 1)], provenance="K2+K1"),
        "P4": fam.path(4),
        "C4": fam.cycle(4),
        "K1,3": fam.star(3),
        "paw": Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)], provenance="paw"),
        "C5": fam.cycle(5),
    }


def connected_corpus(max_n: int = 10, seed: int = 20211, randoms: int = 10) -> dict[str, Graph]:
    """Named connected graphs with ``3 <= n <= max_n`` plus seeded random connected graphs."""
    out: dict[str, Graph] = {}
    for n in range(3, max_n + 1):
        out[f"P{n}"] = fam.path(n)
        out[f"C{n}"] = fam.cycle(n)
        out[f"K1,{n - 1}"] = fam.star(n - 1)
        if n <= 7:
            out[f"K{n}"] = fam.complete(n)
        if n >= 4:
            out[f"W{n}"] = fam.wheel(n)
            out[f"F{n}"] = fam.fan(n)
    for r, s in [(2, 2), (2, 3), (3, 3), (2, 5), (3, 4)]:
        if r + s <= max_n:
            out[f"K{r},{s}"] = fam.complete_bipartite(r, s)
            out[f"K{r}vE{s}"] = fam.clique_join_empty(r, s)
    out["paw"] = join_corpus()["paw"]
    if max_n >= 10:
        out["petersen"] = fam.petersen()
    rng = Xoshiro256(seed)
    made = 0
    while made < randoms:
        n = 5 + rng.below(max(1, max_n - 4))
        g = random_graph(n, 0.45, rng.next_u64())
        if is_connected(g):
            out[f"random{made}:{g.provenance}"] = g
            made += 1
    return out


def small_graph_atlas(max_n: int) -> list[tuple[str, Graph]]:
    """All graphs on 2..max_n vertices up to isomorphism (networkx atlas, max_n <= 7)."""
    import networkx as nx

    out = []
    for idx, h in enumerate(nx.graph_atlas_g()):
        n = h.number_of_nodes()
        if 2 <= n <= max_n:
            out.append((f"atlas{idx}", Graph.from_edges(n, h.edges(), provenance=f"atlas:{idx}")))
    return out


# ------------------------------------------------------------------- suites


def suite_cycles(cfg: SuiteConfig) -> list[CaseSpec]:
    max_n = cfg.max_n or 12
    cases = []
    for n in range(3, max_n + 1):
        for k in range(2, n):
            cases.append(
                CaseSpec(
                    f"cycle n={n} k={k}",
                    "cycle-formula",
                    lambda n=n, k=k: cycle_formula(n, k).value,
                    lambda n=n, k=k: _value(sgp(fam.cycle(n), k, cfg.budget())),
                )
            )
    return cases


def random_trees(count: int, seed: int, max_n: int = 10) -> list[Graph]:
    rng = Xoshiro256(seed)
    return [random_tree(3 + rng.below(max_n - 2), rng) for _ in range(count)]


def suite_trees(cfg: SuiteConfig) -> list[CaseSpec]:
    cases = []
    for idx, t in enumerate(random_trees(cfg.count or 50, cfg.seed, cfg.max_n or 10)):
        for k in range(2, t.n):
            cases.append(
                CaseSpec(
                    f"tree#{idx} {t.provenance} n={t.n} k={k}",
                    "tree-formula",
                    lambda t=t, k=k: tree_formula(t, k).value,
                    lambda t=t, k=k: _value(sgp(t, k, cfg.budget())),
                )
            )
    return cases


def suite_joins(cfg: SuiteConfig) -> list[CaseSpec]:
    corpus = join_corpus()
    max_n = cfg.max_n or 10
    cases = []
    for gname, g in corpus.items():
        for hname, h in corpus.items():
            if g.n + h.n > max_n:
                continue
            gh = fam.join(g, h)
            for k in range(2, gh.n + 1):
                cases.append(
                    CaseSpec(
                        f"join {gname}v{hname} k={k} somega",
                        "join-somega",
                        lambda g=g, h=h, k=k: _value(join_somega(g, h, k, cfg.budget())),
                        lambda gh=gh, k=k: _value(somega(gh, k, cfg.budget())),
                    )
                )
            for k in range(2, gh.n):
                cases.append(
                    CaseSpec(
                        f"join {gname}v{hname} k={k} sgp",
                        "join",
                        lambda g=g, h=h, k=k: _value(join_formula(g, h, k, cfg.budget())),
                        lambda gh=gh, k=k: _value(sgp(gh, k, cfg.budget())),
                    )
                )
    return cases


def corollary_instances(max_order: int = 9) -> list[tuple[str, tuple[int, ...], Graph]]:
    out = []
    for r in range(1, max_order):
        for s in range(1, max_order - r + 1):
            out.append(("complete", (r, s), fam.join(fam.complete(r), fam.complete(s))))
            if r <= s:
                out.append(("complete_bipartite", (r, s), fam.complete_bipartite(r, s)))
            out.append(("clique_join_empty", (r, s), fam.clique_join_empty(r, s)))
    for n in range(6, max_order + 1):
        out.append(("wheel", (n,), fam.wheel(n)))
    for n in range(4, max_order + 1):
        out.append(("fan", (n,), fam.fan(n)))
    return out


def suite_corollary44(cfg: SuiteConfig) -> list[CaseSpec]:
    cases = []
    for family, params, g in corollary_instances(cfg.max_n or 9):
        for k in range(2, g.n):
            cases.append(
                CaseSpec(
                    f"{family}{params} k={k}",
                    f"join-families:{family}",
                    lambda f=family, p=params, k=k: corollary_family_formula(f, p, k).value,
                    lambda g=g, k=k: _value(sgp(g, k, cfg.budget())),
                )
            )
    return cases


def suite_sjc(cfg: SuiteConfig) -> list[CaseSpec]:
    cases = []
    for n in range(3, (cfg.max_n or 10) + 1):
        for family, maker in (("path", fam.path), ("cycle", fam.cycle)):
            for k in range(2, n):
                cases.append(
                    CaseSpec(
                        f"sjc {family} n={n} k={k}",
                        f"sjc-{family}",
                        lambda f=family, n=n, k=k: path_cycle_sjc_formula(f, n, k).value,
                        lambda m=maker, n=n, k=k: _value(sjc(m(n), k, cfg.budget())),
                    )
                )
    return cases


def lex_factor_pairs(max_product: int = 12) -> list[tuple[str, Graph, str, Graph]]:
    """``(g, h)`` with ``g`` connected, both nontrivial, ``n(g) n(h) <= max_product``."""
    atlas = small_graph_atlas(min(7, max_product // 2))
    pairs = []
    for gname, g in atlas:
        if not is_connected(g):
            continue
        for hname, h in atlas:
            if g.n * h.n <= max_product:
                pairs.append((gname, g, hname, h))
    return pairs


def random_lex_instances(count: int, seed: int) -> list[tuple[Graph, Graph, int]]:
    rng = Xoshiro256(seed)
    out = []
    while len(out) < count:
        ng, nh = 2 + rng.below(3), 2 + rng.below(3)
        if ng * nh > 12:
            continue
        g = random_graph(ng, 0.6, rng.next_u64())
        if not is_connected(g):
            continue
        h = random_graph(nh, 0.5, rng.next_u64())
        k = 2 + rng.below(ng * nh - 2)
        out.append((g, h, k))
    return out


def suite_lexicographic(cfg: SuiteConfig) -> list[CaseSpec]:
    big = cfg.budget(max_vertices=64)
    cases = []
    for gname, g, hname, h in lex_factor_pairs(cfg.max_n or 12):
        gh = fam.lexicographic(g, h)
        cases.append(
            CaseSpec(
                f"gp lex {gname}({g.provenance}) o {hname}({h.provenance})",
                "lexicographic-gp",
                lambda g=g, h=h: _value(lex_gp_formula(g, h, cfg.budget())),
                lambda gh=gh: _value(gp(gh, big)),
            )
        )
    for n, ell, k in [(5, 2, 3), (6, 2, 3), (5, 3, 3)]:
        cases.append(
            CaseSpec(
                f"sgp lex C{n} o K{ell} k={k}",
                "lexicographic-cycle-complete",
                lambda n=n, ell=ell, k=k: lex_cycle_complete_formula(n, ell, k).value,
                lambda n=n, ell=ell, k=k: _value(
                    sgp(fam.lexicographic(fam.cycle(n), fam.complete(ell)), k, big)
                ),
            )
        )
    for idx, (g, h, k) in enumerate(random_lex_instances(cfg.count or 20, cfg.seed)):
        gh = fam.lexicographic(g, h)
        exact = k > (g.n - 1) * h.n
        cases.append(
            CaseSpec(
                f"bound lex#{idx} {g.provenance} o {h.provenance} k={k}",
                "lexicographic" + (" (equality)" if exact else ""),
                lambda g=g, h=h, k=k: _value(lex_lower_bound(g, h, k, cfg.budget())),
                lambda gh=gh, k=k: _value(sgp(gh, k, big)),
                "eq" if exact else "le",
            )
        )
    return cases


def random_split_graphs(count: int, seed: int, max_order: int = 9) -> list[Graph]:
    rng = Xoshiro256(seed)
    out = []
    for _ in range(count):
        r = 1 + rng.below(max_order - 1)
        s = 1 + rng.below(max_order - r)
        out.append(random_split(r, s, rng))
    return out


def suite_split(cfg: SuiteConfig) -> list[CaseSpec]:
    cases = []
    for idx, g in enumerate(random_split_graphs(cfg.count or 20, cfg.seed, cfg.max_n or 9)):
        for k in range(2, g.n):
            cases.append(
                CaseSpec(
                    f"split#{idx} {g.provenance} k={k}",
                    "split",
                    lambda g=g, k=k: split_lower_bound(g, k).value,
                    lambda g=g, k=k: _value(sgp(g, k, cfg.budget())),
                    "le",
                )
            )
    return cases


def grid_verdict(k: int, radius: int) -> bool:
    g, spec = fam.cartesian_grid(radius)
    return is_k_sgp(g, grid_witness_vertices(k, spec), k)


def suite_grid(cfg: SuiteConfig) -> list[CaseSpec]:
    ks = [cfg.k] if cfg.k else [2, 3, 4]
    cases = []
    for k in ks:
        _, radius = grid_lower_bound_witness(k)
        for r in (radius, radius + 1):
            cases.append(
                CaseSpec(
                    f"grid k={k} witness size 2k on radius {r}",
                    "grid",
                    lambda k=k: (2 * k, True),
                    lambda k=k, r=r: (len(grid_lower_bound_witness(k)[0]), grid_verdict(k, r)),
                )
            )
    if 2 in ks:
        cases.append(
            CaseSpec(
                "grid gp on radius 3",
                "grid (k=2 tight)",
                lambda: 4,
                lambda: _value(gp(fam.cartesian_grid(3)[0], cfg.budget(max_vertices=64))),
            )
        )
    return cases


def suite_figure1(cfg: SuiteConfig) -> list[CaseSpec]:
    g = fam.counterexample_gk(3)
    budget = cfg.budget(max_vertices=16)
    a = g.vertices("v1", "v2", "v3", "w")
    s2 = g.vertices("w", "x", "y", "z")
    b = g.vertices("v1", "v2", "v3")
    return [
        CaseSpec("G3 {v1,v2,v3,w} is 2-sgp", "counterexample-caption", lambda: True, lambda: is_k_sgp(g, a, 2)),
        CaseSpec("G3 {v1,v2,v3,w} is 3-sgp", "counterexample-caption", lambda: False, lambda: is_k_sgp(g, a, 3)),
        CaseSpec("G3 {w,x,y,z} is 2-sgp", "counterexample-caption", lambda: True, lambda: is_k_sgp(g, s2, 2)),
        CaseSpec("G3 {w,x,y,z} is 3-sgp", "counterexample-caption", lambda: True, lambda: is_k_sgp(g, s2, 3)),
        CaseSpec(
            "G3 {w,x,y,z} is j-sgp for all j in [2,12]",
            "interval-sets",
            lambda: True,
            lambda: all(is_k_sgp(g, s2, j) for j in range(2, g.n)),
        ),
        CaseSpec("G3 Steiner distance of {v1,v2,v3}", "counterexample", lambda: 6, lambda: steiner_distance(g, b)),
        CaseSpec("G3 sgp_2", "counterexample-caption", lambda: 4, lambda: _value(sgp(g, 2, budget)), "le"),
        CaseSpec("G3 sgp_3", "counterexample-caption", lambda: 4, lambda: _value(sgp(g, 3, budget)), "le"),
    ]


def suite_remark21(cfg: SuiteConfig) -> list[CaseSpec]:
    cases = []
    for name, g in connected_corpus(cfg.max_n or 10, cfg.seed).items():
        w = clique_number(g)[0]
        for k in range(2, g.n):

            def chain(g=g, k=k, w=w):
                so = _value(somega(g, k, cfg.budget()))
                sg = _value(sgp(g, k, cfg.budget()))
                return max(k, w) <= so <= sg <= g.n

            cases.append(CaseSpec(f"{name} k={k}", "bound-chain", lambda: True, chain))
    return cases


def suite_prop22(cfg: SuiteConfig) -> list[CaseSpec]:
    cases = []
    for name, g in connected_corpus(cfg.max_n or 10, cfg.seed).items():
        kappa = vertex_connectivity(g)
        for k in range(2, g.n):
            cases.append(
                CaseSpec(
                    f"{name} k={k}",
                    "connectivity-characterization",
                    lambda g=g, k=k, kappa=kappa: kappa >= g.n - k + 1,
                    lambda g=g, k=k: _value(sgp(g, k, cfg.budget())) == g.n,
                )
            )
    return cases


def steiner_instances(count: int, seed: int, max_n: int = 12, max_t: int = 5) -> list[tuple[Graph, tuple[int, ...]]]:
    rng = Xoshiro256(seed)
    out = []
    for _ in range(count):
        n = 2 + rng.below(max_n - 1)
        g = random_graph(n, 0.15 + 0.5 * rng.random(), rng.next_u64())
        t = 1 + rng.below(min(max_t, n))
        terms = sorted(set(rng.below(n) for _ in range(t)))
        out.append((g, tuple(terms)))
    return out


def sgp_check_instances(count: int, seed: int, max_n: int = 9) -> list[tuple[Graph, tuple[int, ...], int]]:
    rng = Xoshiro256(seed ^ 0x5EED)
    out = []
    for _ in range(count):
        n = 3 + rng.below(max_n - 2)
        g = random_graph(n, 0.2 + 0.5 * rng.random(), rng.next_u64())
        a = tuple(v for v in range(n) if rng.random() < 0.6)
        k = 2 + rng.below(max(1, n - 2))
        out.append((g, a, k))
    return out


def suite_steiner_oracle(cfg: SuiteConfig) -> list[CaseSpec]:
    cases = []
    for idx, (g, terms) in enumerate(steiner_instances(cfg.count or 500, cfg.seed, cfg.max_n or 12)):
        cases.append(
            CaseSpec(
                f"steiner#{idx} {g.provenance} W={list(terms)}",
                "dp-vs-naive",
                lambda g=g, t=terms: naive_steiner_distance(g, t),
                lambda g=g, t=terms: steiner_table(g, t).full,
            )
        )
        cases.append(
            CaseSpec(
                f"table#{idx} invariants",
                "table-invariants",
                lambda: [],
                lambda g=g, t=terms: steiner_table(g, t).check_invariants(g),
            )
        )
    for idx, (g, a, k) in enumerate(sgp_check_instances(max(1, (cfg.count or 500) // 5), cfg.seed, 9)):
        cases.append(
            CaseSpec(
                f"sgp-check#{idx} {g.provenance} A={list(a)} k={k}",
                "sgp-naive",
                lambda g=g, a=a, k=k: naive_is_k_sgp(g, a, k),
                lambda g=g, a=a, k=k: is_k_sgp(g, a, k),
            )
        )
    return cases


def suite_monotonicity(cfg: SuiteConfig) -> list[CaseSpec]:
    cases = []
    graphs = dict(connected_corpus(min(cfg.max_n or 9, 10), cfg.seed))
    for name, g in graphs.items():

        def drops(g=g):
            report = monotonicity_probe(g, cfg.budget())
            if report.truncated:
                raise TruncatedSearch
            return report.drops

        cases.append(CaseSpec(f"{name} sgp_k nondecreasing in k", "monotonicity-probe", lambda: [], drops))
    return cases


SUITES: dict[str, Callable[[SuiteConfig], list[CaseSpec]]] = {
    "cycles": suite_cycles,
    "trees": suite_trees,
    "joins": suite_joins,
    "corollary44": suite_corollary44,
    "sjc": suite_sjc,
    "lexicographic": suite_lexicographic,
    "split": suite_split,
    "grid": suite_grid,
    "figure1": suite_figure1,
    "remark21": suite_remark21,
    "prop22": suite_prop22,
    "steiner-oracle": suite_steiner_oracle,
    "monotonicity": suite_monotonicity,
}


class UnknownSuite(KeyError):
    pass


def run_suite(name: str, config: SuiteConfig | None = None) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    config = config or SuiteConfig()
    report = SuiteReport(name, {k: v for k, v in asdict(config).items() if v is not None})
    started = time.perf_counter()
    per_case = {}
    for spec in SUITES[name](config):
        t0 = time.perf_counter()
        try:
            expected = spec.expected()
            computed = spec.computed()
        except TruncatedSearch:
            report.cases.append(CaseResult(spec.descriptor, spec.source, None, None, SKIPPED))
            continue
        if spec.relation == "le":
            verdict = BOUND if expected <= computed else MISMATCH
        else:
            verdict = MATCH if expected == computed else MISMATCH
        report.cases.append(CaseResult(spec.descriptor, spec.source, expected, computed, verdict))
        per_case[spec.descriptor] = round((time.perf_counter() - t0) * 1000, 3)
    report.timing = {"total_ms": round((time.perf_counter() - started) * 1000, 3), "cases_ms": per_case}
    return report
