"""Closed-form values and lower bounds for sgp_k on structured graphs.

Each function checks the applicability conditions of its formula, records them
in ``preconditions``, and refuses (``FormulaError``) when one fails.  Results
are tagged ``Exact`` or ``LowerBound``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .families import GridSpec
from .graph import Graph, degrees, is_connected, is_tree, leaves
from .search import (
    Budget,
    enumerate_interval_sgp_sets,
    omega,
    partition_sgp_set,
    sgp_interval,
    sjc,
    somega,
)

EXACT = "Exact"
LOWER = "LowerBound"


class FormulaError(ValueError):
    """A formula was applied outside its stated range."""


@dataclass(frozen=True)
class FormulaResult:
    value: int
    kind: str
    source: str
    preconditions: list[tuple[str, bool]] = field(default_factory=list)
    truncated: bool = False

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "kind": self.kind,
            "source": self.source,
            "preconditions": [[c, ok] for c, ok in self.preconditions],
            "truncated": self.truncated,
        }


class _Conditions:
    def __init__(self, source: str):
        self.source = source
        self.checked: list[tuple[str, bool]] = []

    def require(self, text: str, ok: bool) -> None:
        self.checked.append((text, bool(ok)))
        if not ok:
            raise FormulaError(f"{self.source}: precondition failed: {text}")

    def result(self, value: int, kind: str = EXACT, truncated: bool = False) -> FormulaResult:
        return FormulaResult(int(value), kind, self.source, self.checked, truncated)


def tree_formula(t: Graph, k: int) -> FormulaResult:
    """``sgp_k(T)`` is the leaf count when ``k <= l(T)``, else ``k``."""
    c = _Conditions("trees")
    c.require("T is a tree", is_tree(t))
    c.require("n(T) >= 3", t.n >= 3)
    c.require(f"k in [2, {t.n - 1}]", 2 <= k <= t.n - 1)
    nleaves = len(leaves(t))
    return c.result(nleaves if k <= nleaves else k)


def cycle_formula(n: int, k: int) -> FormulaResult:
    """``sgp_k(C_n)`` is ``k`` on ``[floor(2n/3), n-2]`` and ``k+1`` otherwise."""
    c = _Conditions("cycles")
    c.require("n >= 3", n >= 3)
    c.require(f"k in [2, {n - 1}]", 2 <= k <= n - 1)
    return c.result(k if 2 * n // 3 <= k <= n - 2 else k + 1)


def path_cycle_sjc_formula(family: str, n: int, k: int) -> FormulaResult:
    c = _Conditions(f"sjc-{family}")
    c.require("family is path or cycle", family in ("path", "cycle"))
    c.require("n >= 3", n >= 3)
    c.require(f"k in [2, {n - 1}]", 2 <= k <= n - 1)
    if family == "path":
        return c.result(n - n // (k + 1))
    if k == n - 1:
        return c.result(n)
    return c.result(n - 1 - (n - 1) // (k + 1))


def join_somega(g: Graph, h: Graph, k: int, budget: Budget | None = None) -> FormulaResult:
    """Steiner clique number of ``g v h`` as the sum over the factors."""
    c = _Conditions("join-somega")
    c.require(f"k in [2, {g.n + h.n}]", 2 <= k <= g.n + h.n)
    a, b = somega(g, k, _fresh(budget)), somega(h, k, _fresh(budget))
    return c.result(a.value + b.value, truncated=a.stats.truncated or b.stats.truncated)


def join_formula(g: Graph, h: Graph, k: int, budget: Budget | None = None) -> FormulaResult:
    """``sgp_k(g v h) = max(somega_k(g v h), sjc_k(g), sjc_k(h))``."""
    c = _Conditions("join")
    c.require(f"k in [2, {g.n + h.n - 1}]", 2 <= k <= g.n + h.n - 1)
    clique = join_somega(g, h, k, budget)
    a, b = sjc(g, k, _fresh(budget)), sjc(h, k, _fresh(budget))
    truncated = clique.truncated or a.stats.truncated or b.stats.truncated
    return c.result(max(clique.value, a.value, b.value), truncated=truncated)


COROLLARY_FAMILIES = ("complete", "wheel", "fan", "complete_bipartite", "clique_join_empty")


def corollary_family_formula(family: str, params: tuple[int, ...], k: int) -> FormulaResult:
    """Closed forms for joins of standard families.

    ``complete`` takes ``(r, s)`` for ``K_r v K_s``; ``wheel``/``fan`` take
    ``(n,)``; ``complete_bipartite`` and ``clique_join_empty`` take ``(r, s)``.
    """
    if family == "complete":
        r, s = params
        c = _Conditions("join-families(i)")
        c.require("r, s >= 1", r >= 1 and s >= 1)
        c.require(f"k in [2, {r + s - 1}]", 2 <= k <= r + s - 1)
        return c.result(r + s)
    if family == "wheel":
        (n,) = params
        c = _Conditions("join-families(ii)")
        c.require("n >= 6", n >= 6)
        c.require(f"k in [2, {n - 1}]", 2 <= k <= n - 1)
        return c.result(max(k + 1, n - 2 - (n - 2) // (k + 1)))
    if family == "fan":
        (n,) = params
        c = _Conditions("join-families(iii)")
        c.require("n >= 4", n >= 4)
        c.require(f"k in [2, {n - 1}]", 2 <= k <= n - 1)
        return c.result(max(k + 1, n - 1 - (n - 1) // (k + 1)))
    if family == "complete_bipartite":
        r, s = params
        c = _Conditions("join-families(iv)")
        c.require("1 <= r <= s", 1 <= r <= s)
        c.require(f"k in [2, {r + s - 1}]", 2 <= k <= r + s - 1)
        if k <= s:
            return c.result(max(s, min(k - 1, r) + k - 1))
        return c.result(r + s)
    if family == "clique_join_empty":
        r, s = params
        c = _Conditions("join-families(v)")
        c.require("r, s >= 1", r >= 1 and s >= 1)
        c.require(f"k in [2, {r + s - 1}]", 2 <= k <= r + s - 1)
        if k > min(r, s):
            return c.result(r + min(s, k - 1))
        return c.result(max(r + k - 1, s))
    raise FormulaError(f"join-families: unknown family {family!r}; expected one of {COROLLARY_FAMILIES}")


def _fresh(budget: Budget | None) -> Budget | None:
    if budget is None:
        return None
    return Budget(budget.max_nodes, budget.max_seconds, budget.max_vertices)


def _weighted_max(g: Graph, k: int, w_isolated: int, w_other: int, budget: Budget | None) -> tuple[int, bool]:
    stream = enumerate_interval_sgp_sets(g, 2, k, _fresh(budget))
    best = 0
    for s in stream:
        part = partition_sgp_set(g, s)
        best = max(best, len(part.isolated) * w_isolated + len(part.nonisolated) * w_other)
    return best, stream.truncated


def lex_lower_bound(g: Graph, h: Graph, k: int, budget: Budget | None = None) -> FormulaResult:
    """Lower bound on ``sgp_k(g o h)``; exact when ``k > (n(g)-1) n(h)``."""
    c = _Conditions("lexicographic")
    c.require("g connected", is_connected(g))
    c.require("g nontrivial", g.n >= 2)
    c.require("h nontrivial", h.n >= 2)
    c.require(f"k in [2, {g.n * h.n - 1}]", 2 <= k <= g.n * h.n - 1)
    kind = EXACT if k > (g.n - 1) * h.n else LOWER
    if k <= h.n:
        a, b = sjc(h, k, _fresh(budget)), somega(h, k, _fresh(budget))
        value, truncated = _weighted_max(g, k, a.value, b.value, budget)
        truncated |= a.stats.truncated or b.stats.truncated
        return c.result(value, kind, truncated)
    j = math.ceil(k / h.n)
    ell = min(k, g.n)
    inner = sgp_interval(g, j, ell, _fresh(budget))
    return c.result(inner.value * h.n, kind, inner.stats.truncated)


def lex_gp_formula(g: Graph, h: Graph, budget: Budget | None = None) -> FormulaResult:
    """General position number of ``g o h``."""
    c = _Conditions("lexicographic-gp")
    c.require("g connected", is_connected(g))
    c.require("g nontrivial", g.n >= 2)
    c.require("h nontrivial", h.n >= 2)
    a = sjc(h, 2, _fresh(budget))
    value, truncated = _weighted_max(g, 2, a.value, omega(h), budget)
    return c.result(value, EXACT, truncated or a.stats.truncated)


def lex_cycle_complete_formula(n: int, ell: int, k: int) -> FormulaResult:
    """``sgp_k(C_n o K_ell) = 3 ell`` for ``k`` in ``[3, max(3, ell)]``.

    Larger ``k`` is refused: ``C_6 o K_2`` already has ``sgp_5 = 8``.
    """
    c = _Conditions("lexicographic-cycle-complete")
    c.require("n >= 5", n >= 5)
    c.require("ell >= 2", ell >= 2)
    c.require(f"k in [3, {max(3, ell)}]", 3 <= k <= max(3, ell))
    return c.result(3 * ell)


def split_parameters(g: Graph, k: int) -> tuple[int, int, int, int]:
    """``(r, s, i, u_k)`` for a split graph built by ``make_split``.

    ``i`` is the largest index with ``deg(v_i) > r - k + i`` after sorting the
    independent side by descending degree (0 when ``deg(v_1) <= r - k + 1``);
    ``u_k`` counts universal vertices when ``k > s`` and is 0 otherwise.
    """
    r = g.meta.get("split_r")
    if r is None:
        raise FormulaError("split: graph carries no clique/independent partition; build it with make_split")
    s = g.n - r
    deg = degrees(g)
    indep = sorted(range(r, g.n), key=lambda v: (-deg[v], v))
    i_val = 0
    if indep and deg[indep[0]] > r - k + 1:
        i_val = max(i for i in range(1, s + 1) if deg[indep[i - 1]] > r - k + i)
    universal = sum(1 for d in deg if d == g.n - 1)
    return r, s, i_val, universal if k > s else 0


def split_lower_bound(g: Graph, k: int) -> FormulaResult:
    c = _Conditions("split")
    c.require("partition known", "split_r" in g.meta)
    c.require("k >= 2", k >= 2)
    c.require("g connected", is_connected(g))
    r, s, i_val, u_val = split_parameters(g, k)
    return c.result(max(r + i_val, s + u_val, k), LOWER)


def grid_lower_bound_witness(k: int) -> tuple[list[tuple[int, int]], int]:
    """The ``2k`` grid points of the construction and the default window radius ``k + 1``.

    One anti-diagonal runs from ``(k-1, 0)`` to ``(0, k-1)``, the other from
    ``(-k+1, 0)`` to ``(0, -k+1)``.
    """
    if k < 2:
        raise FormulaError("grid: k must be at least 2")
    first = [(k - 1 - t, t) for t in range(k)]
    second = [(-k + 1 + t, -t) for t in range(k)]
    return first + second, k + 1


def grid_lower_bound(k: int) -> FormulaResult:
    c = _Conditions("grid")
    c.require("k >= 2", k >= 2)
    return c.result(2 * k, LOWER)


def grid_witness_vertices(k: int, spec: GridSpec) -> tuple[int, ...]:
    coords, _ = grid_lower_bound_witness(k)
    return tuple(sorted(spec.vertex(x, y) for x, y in coords))
