"""Acceptance criteria 1-11, each reported as one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines appear in the
"acceptance criteria" section of the terminal summary.
"""

import time
from functools import lru_cache

from conftest import ACCEPTANCE_LINES
from steinergp import families as fam
from steinergp.graph import from_mask, is_connected
from steinergp.harness import MISMATCH, SKIPPED, SuiteConfig, connected_corpus, run_suite
from steinergp.rng import Xoshiro256, random_graph
from steinergp.search import Budget, is_k_sgp, sgp
from steinergp.steiner import collect_tables, steiner_table


@lru_cache(maxsize=None)
def suite(name, **config):
    return run_suite(name, SuiteConfig(**config))


def bad_cases(report, sources=None):
    """Mismatched or budget-skipped cases, optionally limited to some sources."""
    return [
        c
        for c in report.cases
        if (sources is None or c.source in sources) and c.verdict in (MISMATCH, SKIPPED)
    ]


def record(number, title, failures, started, limit_s, detail=""):
    elapsed = time.perf_counter() - started
    ok = not failures and elapsed <= limit_s
    shown = "; ".join(failures[:4]) + (f"; ... {len(failures) - 4} more" if len(failures) > 4 else "")
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {title} ({elapsed:.1f}s of {limit_s}s)"
    if detail:
        line += f" {detail}"
    if failures:
        line += f" -- {shown}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert not failures, shown
    assert elapsed <= limit_s, f"took {elapsed:.1f}s, limit {limit_s}s"


def describe(cases):
    return [f"{c.descriptor}: expected {c.expected}, got {c.computed} [{c.verdict}]" for c in cases]


def test_criterion_01_cycles():
    t0 = time.perf_counter()
    report = suite("cycles", max_n=12)
    pairs = sum(n - 2 for n in range(3, 13))
    failures = describe(bad_cases(report))
    if len(report.cases) != pairs:
        failures.append(f"{len(report.cases)} cases, expected {pairs}")
    record(1, "cycle formula vs search, n in [3,12]", failures, t0, 300, f"{len(report.cases)} pairs")


def test_criterion_02_trees():
    t0 = time.perf_counter()
    report = suite("trees", count=50, max_n=10)
    trees = {c.descriptor.split()[0] for c in report.cases}
    failures = describe(bad_cases(report))
    if len(trees) != 50:
        failures.append(f"{len(trees)} trees with cases, expected 50")
    record(2, "tree formula vs search, 50 random trees", failures, t0, 300, f"{len(report.cases)} cases")


def test_criterion_03_counterexample_graph():
    t0 = time.perf_counter()
    g = fam.counterexample_gk(3)
    budget = Budget(max_vertices=16)
    a = g.vertices("v1", "v2", "v3", "w")
    s2 = g.vertices("w", "x", "y", "z")
    checks = [
        ("sgp_2(G3) = 4", sgp(g, 2, budget).value, 4),
        ("sgp_3(G3) = 4", sgp(g, 3, Budget(max_vertices=16)).value, 4),
        ("{v1,v2,v3,w} is 2-SGP", is_k_sgp(g, a, 2), True),
        ("{v1,v2,v3,w} is not 3-SGP", is_k_sgp(g, a, 3), False),
        ("{w,x,y,z} is 3-SGP", is_k_sgp(g, s2, 3), True),
    ]
    failures = [f"{name}: got {got}" for name, got, want in checks if got != want]
    record(3, "counterexample graph regression", failures, t0, 60)


def test_criterion_04_joins():
    t0 = time.perf_counter()
    report = suite("joins", max_n=10)
    record(4, "join additivity and join formula vs search", describe(bad_cases(report)), t0, 900,
           f"{len(report.cases)} cases")


def test_criterion_05_join_families():
    t0 = time.perf_counter()
    report = suite("corollary44", max_n=9)
    record(5, "join-family closed forms vs search, order <= 9", describe(bad_cases(report)), t0, 600,
           f"{len(report.cases)} cases")


def test_criterion_06_sjc():
    t0 = time.perf_counter()
    report = suite("sjc", max_n=10)
    record(6, "sjc formulas for paths and cycles, n <= 10", describe(bad_cases(report)), t0, 300,
           f"{len(report.cases)} cases")


def test_criterion_07_lexicographic():
    t0 = time.perf_counter()
    report = suite("lexicographic", max_n=12, count=20)
    sources = {"lexicographic-gp", "lexicographic-cycle-complete"}
    relevant = [c for c in report.cases if c.source in sources]
    failures = describe(bad_cases(report, sources))
    cor = [c for c in relevant if c.source == "lexicographic-cycle-complete"]
    if len(cor) != 3:
        failures.append(f"{len(cor)} cycle-complete cases, expected 3")
    record(7, "lexicographic gp formula and C_n o K_l", failures, t0, 1200, f"{len(relevant)} cases")


def test_criterion_08_bounds():
    t0 = time.perf_counter()
    lex = suite("lexicographic", max_n=12, count=20)
    lex_bounds = [c for c in lex.cases if c.source.startswith("lexicographic") and c.descriptor.startswith("bound")]
    failures = describe(bad_cases(lex, {c.source for c in lex_bounds}))
    if len(lex_bounds) != 20:
        failures.append(f"{len(lex_bounds)} lexicographic bound instances, expected 20")
    split = suite("split", count=20, max_n=9)
    failures += describe(bad_cases(split))
    for name in ("remark21", "prop22"):
        failures += describe(bad_cases(suite(name, max_n=10)))
    record(8, "lexicographic/split bounds, bound chain, connectivity equivalence", failures, t0, 1200)


def test_criterion_09_grid():
    t0 = time.perf_counter()
    report = suite("grid")
    failures = describe(bad_cases(report))
    if len(report.cases) != 7:
        failures.append(f"{len(report.cases)} cases, expected 7")
    record(9, "grid construction, k in {2,3,4}, and gp on radius 3", failures, t0, 600)


def test_criterion_10_oracles():
    t0 = time.perf_counter()
    report = suite("steiner-oracle", count=500, max_n=12)
    dp = [c for c in report.cases if c.source == "dp-vs-naive"]
    naive = [c for c in report.cases if c.source == "sgp-naive"]
    failures = describe(bad_cases(report))
    if (len(dp), len(naive)) != (500, 100):
        failures.append(f"{len(dp)} Steiner and {len(naive)} sgp instances, expected 500 and 100")
    record(10, "DP vs naive Steiner distance, fast vs naive sgp check", failures, t0, 900)


def hereditary_graphs():
    graphs = [g for g in connected_corpus(8, randoms=0).values() if g.n <= 8]
    rng = Xoshiro256(811)
    while len(graphs) < 50 + len(connected_corpus(8, randoms=0)):
        g = random_graph(3 + rng.below(6), 0.45, rng.next_u64())
        if is_connected(g):
            graphs.append(g)
    return graphs


def test_criterion_11_properties():
    t0 = time.perf_counter()
    failures = []
    graphs = hereditary_graphs()
    with collect_tables() as tables:
        for g in graphs:
            steiner_table(g, range(g.n))
            for k in range(2, g.n):
                valid = [is_k_sgp(g, from_mask(m), k) for m in range(1 << g.n)]
                for m in range(1 << g.n):
                    if valid[m] and not all(valid[m & ~(1 << v)] for v in range(g.n) if m >> v & 1):
                        failures.append(f"{g.provenance} k={k}: {from_mask(m)} has a non-SGP subset")
        suite_tables = run_suite("steiner-oracle", SuiteConfig(count=500, max_n=12))
    assert suite_tables.cases
    for g, table in tables:
        failures += [f"table {table.terminals} on {g.provenance}: {p}" for p in table.check_invariants(g)]
    record(11, "k-SGP hereditary, Steiner tables monotone", failures, t0, 1200,
           f"{len(graphs)} graphs, {len(tables)} tables")

