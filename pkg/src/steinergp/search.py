"""Membership predicates and exact maximum-set searches.

Every set property searched here is hereditary (closed under taking subsets):

* k-SGP: a violation is a k-set ``B`` and a vertex ``u`` of the set, all
  inside the set, with ``u`` on a Steiner ``B``-tree.  Any superset keeps it.
* k-Steiner clique: a disconnected induced k-set survives in supersets.
* k-Steiner join-critical: ``d_{G[A]}(B) = k`` iff some ``u`` in ``A`` makes
  ``G[B + u]`` connected while ``G[B]`` is not, so a violation is again a
  ``(k+1)``-set inside ``A``.

Hence a valid set grown by ``v`` only needs the witnesses that contain ``v``,
and a candidate rejected once stays rejected deeper in the search.  The
search branches over vertices in ascending id order and keeps the first
maximum set it meets, which is the lexicographically smallest one.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .graph import (
    Graph,
    VertexSet,
    clique_number,
    from_mask,
    induced_subgraph,
    is_connected_mask,
    popcount,
    to_mask,
    vertex_set,
)
from .steiner import INF, SteinerOracle, naive_steiner_distance, steiner_distance

DEFAULT_MAX_VERTICES = 12


class SearchError(ValueError):
    """Invalid search parameters (bad ``k``, graph over the budget cap)."""


@dataclass
class Budget:
    """Search limits; exceeding nodes or seconds truncates the search."""

    max_nodes: int | None = None
    max_seconds: float | None = None
    max_vertices: int = DEFAULT_MAX_VERTICES
    nodes: int = 0
    truncated: bool = False
    _deadline: float | None = field(default=None, repr=False)

    def start(self) -> Budget:
        self.nodes = 0
        self.truncated = False
        self._started = time.perf_counter()
        self._deadline = None if self.max_seconds is None else self._started + self.max_seconds
        return self

    def tick(self) -> bool:
        """Count one node; False once a limit is hit."""
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            self.truncated = True
        elif self._deadline is not None and self.nodes % 64 == 0 and time.perf_counter() > self._deadline:
            self.truncated = True
        return not self.truncated

    @property
    def elapsed_ms(self) -> float:
        return (time.perf_counter() - getattr(self, "_started", time.perf_counter())) * 1000

    def admit(self, g: Graph) -> None:
        if g.n > self.max_vertices:
            raise SearchError(f"graph has {g.n} vertices; the budget allows {self.max_vertices}")


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    elapsed_ms: float
    truncated: bool


@dataclass(frozen=True)
class InvariantResult:
    value: int
    witness: VertexSet
    invariant_kind: str
    k: int | None
    stats: SearchStats
    l: int | None = None

    @property
    def exact(self) -> bool:
        return not self.stats.truncated

    @property
    def kind(self) -> str:
        return "Exact" if self.exact else "LowerBound"


@dataclass(frozen=True)
class SgpPartition:
    isolated: VertexSet
    nonisolated: VertexSet


# ---------------------------------------------------------------- predicates


def _check_k(k: int) -> None:
    if k < 2:
        raise SearchError(f"k must be at least 2, got {k}")


def _masks(vertices: Sequence[int], size: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    for combo in itertools.combinations(vertices, size):
        yield to_mask(combo), combo


def is_k_sgp(g: Graph, a: Iterable[int], k: int) -> bool:
    """Whether no k-subset ``B`` of ``a`` has a Steiner tree through another vertex of ``a``."""
    _check_k(k)
    a = vertex_set(a, g.n)
    if len(a) <= k:
        return True
    oracle = SteinerOracle.of(g)
    for bmask, combo in _masks(a, k):
        d = oracle.distance_mask(bmask)
        if d is INF:
            continue
        for u in a:
            if not bmask >> u & 1 and oracle.distance_mask(bmask | 1 << u) == d:
                return False
    return True


def naive_is_k_sgp(g: Graph, a: Iterable[int], k: int) -> bool:
    """Reference checker built on the brute-force Steiner distance only."""
    a = vertex_set(a, g.n)
    for b in itertools.combinations(a, k):
        d = naive_steiner_distance(g, b)
        if d is INF:
            continue
        for u in a:
            if u not in b and naive_steiner_distance(g, b + (u,)) == d:
                return False
    return True


def is_interval_sgp(g: Graph, a: Iterable[int], k: int, l: int) -> bool:
    a = vertex_set(a, g.n)
    return all(is_k_sgp(g, a, j) for j in range(k, l + 1))


def is_steiner_clique(g: Graph, a: Iterable[int], k: int) -> bool:
    """Every k-subset of ``a`` induces a connected subgraph."""
    _check_k(k)
    a = vertex_set(a, g.n)
    return all(is_connected_mask(g, m) for m, _ in _masks(a, k))


def is_join_critical(g: Graph, a: Iterable[int], k: int) -> bool:
    """No k-subset ``B`` of ``a`` has Steiner distance exactly ``k`` inside ``G[a]``.

    Sets with fewer than ``k`` vertices have no k-subsets and pass.
    """
    _check_k(k)
    a = vertex_set(a, g.n)
    if len(a) < k:
        return True
    sub, _ = induced_subgraph(g, a)
    return all(steiner_distance(sub, b) != k for b in itertools.combinations(range(sub.n), k))


def is_general_position(g: Graph, a: Iterable[int]) -> bool:
    """No three vertices of ``a`` on a common geodesic (finite distances only)."""
    a = vertex_set(a, g.n)
    dist = g.distances
    for x, y, z in itertools.combinations(a, 3):
        for p, q, mid in ((x, y, z), (x, z, y), (y, z, x)):
            if dist[p, q] < float("inf") and dist[p, mid] + dist[mid, q] == dist[p, q]:
                return False
    return True


def partition_sgp_set(g: Graph, s: Iterable[int]) -> SgpPartition:
    """Split ``s`` into vertices isolated in ``G[s]`` and the rest."""
    s = vertex_set(s, g.n)
    smask = to_mask(s)
    iso = tuple(v for v in s if not g.adj[v] & smask)
    return SgpPartition(iso, tuple(v for v in s if g.adj[v] & smask))


# ------------------------------------------------------- incremental checks
# Each ``extends`` callable answers: given a valid set ``chosen`` (a list in
# ascending order), is ``chosen + [c]`` still valid?


def _sgp_extender(g: Graph, k: int) -> Callable[[list[int], int], bool]:
    oracle = SteinerOracle.of(g)
    dist = oracle.distance_mask

    def extends(chosen: list[int], c: int) -> bool:
        if len(chosen) + 1 <= k:
            return True
        cbit = 1 << c
        # c on a Steiner tree of a k-subset of chosen
        for bmask, _ in _masks(chosen, k):
            d = dist(bmask)
            if d is not INF and dist(bmask | cbit) == d:
                return False
        # c inside B, some other chosen vertex on the tree
        for bmask, combo in _masks(chosen, k - 1):
            bmask |= cbit
            d = dist(bmask)
            if d is INF:
                continue
            for u in chosen:
                if not bmask >> u & 1 and dist(bmask | 1 << u) == d:
                    return False
        return True

    return extends


def _clique_extender(g: Graph, k: int) -> Callable[[list[int], int], bool]:
    def extends(chosen: list[int], c: int) -> bool:
        if len(chosen) + 1 < k:
            return True
        cbit = 1 << c
        return all(is_connected_mask(g, m | cbit) for m, _ in _masks(chosen, k - 1))

    return extends


def _sjc_extender(g: Graph, k: int) -> Callable[[list[int], int], bool]:
    def extends(chosen: list[int], c: int) -> bool:
        if len(chosen) + 1 <= k:
            return True
        cbit = 1 << c
        for m, combo in _masks(chosen, k):
            m |= cbit
            if not is_connected_mask(g, m):
                continue
            for u in combo + (c,):
                if not is_connected_mask(g, m ^ 1 << u):
                    return False
        return True

    return extends


def _gp_extender(g: Graph) -> Callable[[list[int], int], bool]:
    dist = g.distances

    def between(p: int, mid: int, q: int) -> bool:
        return dist[p, q] < float("inf") and dist[p, mid] + dist[mid, q] == dist[p, q]

    def extends(chosen: list[int], c: int) -> bool:
        for x, y in itertools.combinations(chosen, 2):
            if between(x, c, y) or between(c, x, y) or between(c, y, x):
                return False
        return True

    return extends


def _all_of(extenders: list[Callable[[list[int], int], bool]]) -> Callable[[list[int], int], bool]:
    return lambda chosen, c: all(ext(chosen, c) for ext in extenders)


# ------------------------------------------------------------------ search


def _maximize(n: int, extends: Callable[[list[int], int], bool], budget: Budget) -> list[int]:
    best: list[int] = []
    chosen: list[int] = []

    def dfs(cands: list[int]) -> None:
        nonlocal best
        if not budget.tick():
            return
        if len(chosen) > len(best):
            best = chosen[:]
        for idx, v in enumerate(cands):
            if len(chosen) + len(cands) - idx <= len(best) or budget.truncated:
                return
            chosen.append(v)
            dfs([c for c in cands[idx + 1 :] if extends(chosen, c)])
            chosen.pop()

    dfs(list(range(n)))
    return best


def _run(
    g: Graph,
    kind: str,
    extends: Callable[[list[int], int], bool],
    k: int | None,
    budget: Budget | None,
    l: int | None = None,
) -> InvariantResult:
    budget = budget or Budget()
    budget.admit(g)
    budget.start()
    best = _maximize(g.n, extends, budget)
    stats = SearchStats(budget.nodes, budget.elapsed_ms, budget.truncated)
    return InvariantResult(len(best), tuple(best), kind, k, stats, l)


def _whole_graph(g: Graph, kind: str, k: int, l: int | None = None) -> InvariantResult:
    return InvariantResult(g.n, tuple(range(g.n)), kind, k, SearchStats(0, 0.0, False), l)


def sgp(g: Graph, k: int, budget: Budget | None = None) -> InvariantResult:
    """Largest k-Steiner general position set.

    For ``k >= n(g)`` every set qualifies and the whole vertex set is returned.
    """
    _check_k(k)
    if k >= g.n:
        return _whole_graph(g, "sgp_k", k)
    return _run(g, "sgp_k", _sgp_extender(g, k), k, budget)


def somega(g: Graph, k: int, budget: Budget | None = None) -> InvariantResult:
    """Largest k-Steiner clique (every k-subset induces a connected graph)."""
    _check_k(k)
    return _run(g, "somega_k", _clique_extender(g, k), k, budget)


def sjc(g: Graph, k: int, budget: Budget | None = None) -> InvariantResult:
    """Largest k-Steiner join-critical set."""
    _check_k(k)
    if k >= g.n:
        return _whole_graph(g, "sjc_k", k)
    return _run(g, "sjc_k", _sjc_extender(g, k), k, budget)


def sgp_interval(g: Graph, k: int, l: int, budget: Budget | None = None) -> InvariantResult:
    """Largest set that is j-SGP for every ``j`` in ``[k, l]``."""
    _check_k(k)
    if l < k:
        raise SearchError(f"empty interval [{k}, {l}]")
    extenders = [_sgp_extender(g, j) for j in range(k, min(l, g.n - 1) + 1)]
    if not extenders:
        return _whole_graph(g, "sgp_interval", k, l)
    return _run(g, "sgp_interval", _all_of(extenders), k, budget, l)


def gp_direct(g: Graph, budget: Budget | None = None) -> InvariantResult:
    """General position number from the geodesic definition alone."""
    return _run(g, "gp", _gp_extender(g), 2, budget)


def gp(g: Graph, budget: Budget | None = None) -> InvariantResult:
    """``sgp_2``, cross-checked against the geodesic-based search."""
    via_steiner = sgp(g, 2, budget)
    if via_steiner.stats.truncated:
        return InvariantResult(via_steiner.value, via_steiner.witness, "gp", 2, via_steiner.stats)
    direct = gp_direct(g, Budget(max_vertices=budget.max_vertices) if budget else None)
    if (direct.value, direct.witness) != (via_steiner.value, via_steiner.witness):
        raise RuntimeError(
            f"gp disagreement on {g!r}: Steiner route {via_steiner.witness}, geodesic route {direct.witness}"
        )
    return InvariantResult(via_steiner.value, via_steiner.witness, "gp", 2, via_steiner.stats)


def omega(g: Graph) -> int:
    return clique_number(g)[0]


# ------------------------------------------------------------- enumeration


class IntervalSetStream:
    """Members of the ``[k:l]``-sgp family that suffice for weighted maxima.

    Yields every inclusion-maximal member ``M`` and every ``M`` minus a subset
    of its non-isolated part.  For weights ``a >= b >= 1`` on isolated and
    non-isolated vertices, some optimum ``S`` inside a maximal ``M`` can absorb
    all of ``M``'s isolated vertices at no loss (they stay isolated and add
    ``a``), so an optimum of that shape always appears in the stream.
    ``truncated`` is set when the budget ran out before the family was
    exhausted.
    """

    def __init__(self, g: Graph, k: int, l: int, budget: Budget | None = None):
        _check_k(k)
        if l < k:
            raise SearchError(f"empty interval [{k}, {l}]")
        self.g, self.k, self.l = g, k, l
        self.budget = budget or Budget()
        self.budget.admit(g)
        self.truncated = False

    def _members(self) -> list[int]:
        g = self.g
        extenders = [_sgp_extender(g, j) for j in range(self.k, min(self.l, g.n - 1) + 1)]
        extends = _all_of(extenders)
        out: list[int] = []
        chosen: list[int] = []

        def dfs(cands: list[int]) -> None:
            if not self.budget.tick():
                return
            out.append(to_mask(chosen))
            for idx, v in enumerate(cands):
                if self.budget.truncated:
                    return
                chosen.append(v)
                dfs([c for c in cands[idx + 1 :] if extends(chosen, c)])
                chosen.pop()

        dfs(list(range(g.n)))
        return out

    def __iter__(self) -> Iterator[VertexSet]:
        self.budget.start()
        members = self._members()
        family = set(members)
        seen = set()
        for m in members:
            if any(not m >> v & 1 and (m | 1 << v) in family for v in range(self.g.n)):
                continue
            part = partition_sgp_set(self.g, from_mask(m))
            for r in range(len(part.nonisolated) + 1):
                for drop in itertools.combinations(part.nonisolated, r):
                    sub = m & ~to_mask(drop)
                    if sub not in seen:
                        seen.add(sub)
                        yield from_mask(sub)
        self.truncated = self.budget.truncated


def enumerate_interval_sgp_sets(g: Graph, k: int, l: int, budget: Budget | None = None) -> IntervalSetStream:
    return IntervalSetStream(g, k, l, budget)


def all_interval_sgp_sets(g: Graph, k: int, l: int) -> list[VertexSet]:
    """Every member of the family, by plain subset enumeration (test oracle)."""
    out = []
    for mask in range(1 << g.n):
        a = from_mask(mask)
        if is_interval_sgp(g, a, k, l):
            out.append(a)
    return out


# ------------------------------------------------------------ monotonicity


@dataclass(frozen=True)
class MonotonicityReport:
    values: dict[int, int]
    drops: list[int]
    truncated: bool


def monotonicity_probe(g: Graph, budget: Budget | None = None) -> MonotonicityReport:
    """Tabulate ``sgp_k`` for ``k`` in ``[2, n-1]``; ``drops`` lists ``k`` with ``sgp_{k+1} < sgp_k``."""
    cap = budget.max_vertices if budget else DEFAULT_MAX_VERTICES
    values, truncated = {}, False
    for k in range(2, g.n):
        per_k = Budget(budget.max_nodes, budget.max_seconds, cap) if budget else None
        res = sgp(g, k, per_k)
        values[k] = res.value
        truncated |= res.stats.truncated
    drops = [k for k in values if k + 1 in values and values[k + 1] < values[k]]
    return MonotonicityReport(values, drops, truncated)


def check_witness(g: Graph, result: InvariantResult) -> bool:
    """Re-run the membership predicate matching ``result``'s kind on its witness."""
    w, k = result.witness, result.k
    if len(w) != result.value:
        return False
    kind = result.invariant_kind
    if kind in ("sgp_k", "gp"):
        return is_k_sgp(g, w, k)
    if kind == "somega_k":
        return is_steiner_clique(g, w, k)
    if kind == "sjc_k":
        return is_join_critical(g, w, k)
    if kind == "sgp_interval":
        return is_interval_sgp(g, w, k, result.l)
    raise ValueError(f"unknown invariant kind {kind!r}")
