"""Exact Steiner distances.

The Steiner distance ``d(W)`` is the fewest edges of a connected subgraph
containing ``W``.  It is computed with the Dreyfus–Wagner recurrence over
terminal subsets::

    row(S)[v] = cheapest tree spanning S + {v}
    row({t}) = dist(t, .)
    row(S)   = relax(min over splits S = X + Y of row(X) + row(Y))

where ``relax(f)[v] = min_u f[u] + dist(u, v)``.  Rows are memoized per graph
under the bitmask of ``S`` in ``V(G)``, so terminal sets that share subsets
share work.

``on_some_steiner_tree`` relies on this fact: with ``d(B)`` finite, ``v`` lies
on some Steiner ``B``-tree iff ``d(B + v) = d(B)``.  If ``T`` is a Steiner
``B``-tree through ``v`` it connects ``B + v`` with ``d(B)`` edges, and
``d(B + v) >= d(B)`` always holds.  Conversely a tree for ``B + v`` with
``d(B)`` edges is a minimum connected subgraph containing ``B``.
"""

from __future__ import annotations

import itertools
import json
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .graph import Graph, VertexSet, from_mask, is_connected_mask, popcount, to_mask, vertex_set

MAX_TERMINALS = 16


class _Infinity:
    """Steiner distance of a terminal set spread over several components.

    Compares greater than every integer; arithmetic on it raises ``TypeError``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("steinergp.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class ResourceError(ValueError):
    """A terminal set exceeds the supported size."""


def _as_distance(x: float):
    return INF if np.isinf(x) else int(x)


class SteinerOracle:
    """Memoized Dreyfus–Wagner rows for one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self._dist = g.distances
        self._rows: dict[int, np.ndarray] = {}
        self._d: dict[int, object] = {}

    @classmethod
    def of(cls, g: Graph) -> SteinerOracle:
        """Shared oracle attached to ``g`` (graphs are immutable, so this is safe to cache)."""
        oracle = g.__dict__.get("_steiner_oracle")
        if oracle is None:
            oracle = cls(g)
            g.__dict__["_steiner_oracle"] = oracle
        return oracle

    def _row(self, mask: int) -> np.ndarray:
        row = self._rows.get(mask)
        if row is not None:
            return row
        low = mask & -mask
        if mask == low:
            row = self._dist[low.bit_length() - 1]
        else:
            rest = mask ^ low
            left, right = [], []
            sub = 0
            # submasks of rest except rest itself; low always stays on the left
            while True:
                x = low | sub
                left.append(self._row(x))
                right.append(self._row(mask ^ x))
                sub = (sub - rest) & rest
                if sub == rest:
                    break
            merged = np.min(np.add(left, right), axis=0)
            row = np.min(merged[:, None] + self._dist, axis=0)
        self._rows[mask] = row
        return row

    def distance_mask(self, mask: int):
        """``d(W)`` for the vertex bitmask ``mask`` (``INF`` across components)."""
        d = self._d.get(mask)
        if d is None:
            if popcount(mask) > MAX_TERMINALS:
                raise ResourceError(f"{popcount(mask)} terminals exceed the cap of {MAX_TERMINALS}")
            if not mask:
                raise ValueError("Steiner distance of the empty set is undefined")
            low = (mask & -mask).bit_length() - 1
            d = _as_distance(self._row(mask)[low])
            self._d[mask] = d
        return d

    def distance(self, w: Iterable[int]):
        return self.distance_mask(to_mask(vertex_set(w, self.g.n)))


@dataclass(frozen=True)
class SteinerTable:
    """Steiner distance of every nonempty subset of ``terminals``.

    ``dist[mask]`` uses local bits: bit ``i`` stands for ``terminals[i]``.
    """

    terminals: VertexSet
    dist: tuple

    def __getitem__(self, subset: Iterable[int]):
        pos = {t: i for i, t in enumerate(self.terminals)}
        mask = 0
        for v in subset:
            mask |= 1 << pos[v]
        return self.dist[mask]

    @property
    def full(self):
        return self.dist[(1 << len(self.terminals)) - 1]

    def check_invariants(self, g: Graph) -> list[str]:
        """Return descriptions of violated table invariants (empty when all hold)."""
        problems = []
        t = len(self.terminals)
        dist_uv = g.distances
        for mask in range(1, 1 << t):
            members = [i for i in range(t) if mask >> i & 1]
            d = self.dist[mask]
            if len(members) == 1 and d != 0:
                problems.append(f"singleton {self.terminals[members[0]]} has distance {d}")
            if len(members) == 2:
                a, b = (self.terminals[i] for i in members)
                if d != _as_distance(dist_uv[a, b]):
                    problems.append(f"pair {a},{b}: {d} != geodesic")
            for i in members:
                sub = mask ^ (1 << i)
                if not sub:
                    continue
                if self.dist[sub] > d:
                    problems.append(f"not monotone at {mask:b} minus bit {i}")
                if self.dist[sub] is not INF:
                    v = self.terminals[i]
                    ext = min(dist_uv[self.terminals[j], v] for j in members if j != i)
                    if not np.isinf(ext) and d > self.dist[sub] + int(ext):
                        problems.append(f"tree extension bound broken at {mask:b}")
        return problems

    def to_json(self) -> str:
        return json.dumps(
            {
                "terminals": list(self.terminals),
                "dist": {str(m): (None if d is INF else d) for m, d in enumerate(self.dist) if m},
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> SteinerTable:
        data = json.loads(text)
        t = len(data["terminals"])
        dist = [None] * (1 << t)
        for m, d in data["dist"].items():
            dist[int(m)] = INF if d is None else d
        return cls(tuple(data["terminals"]), tuple(dist))


_table_sinks: list[list[tuple[Graph, SteinerTable]]] = []


@contextmanager
def collect_tables() -> Iterator[list[tuple[Graph, SteinerTable]]]:
    """Collect ``(graph, table)`` for every ``SteinerTable`` built inside the ``with`` block."""
    sink: list[tuple[Graph, SteinerTable]] = []
    _table_sinks.append(sink)
    try:
        yield sink
    finally:
        _table_sinks.remove(sink)


def steiner_table(g: Graph, terminals: Iterable[int], oracle: SteinerOracle | None = None) -> SteinerTable:
    terms = vertex_set(terminals, g.n)
    if len(terms) > MAX_TERMINALS:
        raise ResourceError(f"{len(terms)} terminals exceed the cap of {MAX_TERMINALS}")
    oracle = oracle or SteinerOracle.of(g)
    dist = [None] * (1 << len(terms))
    for local in range(1, 1 << len(terms)):
        mask = 0
        for i, t in enumerate(terms):
            if local >> i & 1:
                mask |= 1 << t
        dist[local] = oracle.distance_mask(mask)
    table = SteinerTable(terms, tuple(dist))
    for sink in _table_sinks:
        sink.append((g, table))
    return table


def steiner_distance(g: Graph, w: Iterable[int]):
    w = vertex_set(w, g.n)
    if not w:
        raise ValueError("Steiner distance needs a nonempty terminal set")
    if len(w) > MAX_TERMINALS:
        raise ResourceError(f"{len(w)} terminals exceed the cap of {MAX_TERMINALS}")
    return SteinerOracle.of(g).distance_mask(to_mask(w))


def naive_steiner_distance(g: Graph, w: Iterable[int]):
    """Brute force: smallest connected vertex superset of ``w``, minus one.

    Independent of the dynamic programme; exponential in ``n(g)``.
    """
    w = vertex_set(w, g.n)
    if not w:
        raise ValueError("Steiner distance needs a nonempty terminal set")
    base = to_mask(w)
    others = [v for v in range(g.n) if not base >> v & 1]
    for extra in range(len(others) + 1):
        for add in itertools.combinations(others, extra):
            if is_connected_mask(g, base | to_mask(add)):
                return len(w) + extra - 1
    return INF


def on_some_steiner_tree(g: Graph, b: Iterable[int], v: int, oracle: SteinerOracle | None = None) -> bool:
    """Whether ``v`` lies on at least one Steiner ``b``-tree."""
    oracle = oracle or SteinerOracle.of(g)
    bmask = to_mask(vertex_set(b, g.n))
    if bmask >> v & 1:
        raise ValueError(f"vertex {v} already belongs to the terminal set")
    d = oracle.distance_mask(bmask)
    if d is INF:
        return False
    return oracle.distance_mask(bmask | 1 << v) == d


def lies_on_tree_mask(oracle: SteinerOracle, bmask: int, v: int) -> bool:
    d = oracle.distance_mask(bmask)
    return d is not INF and oracle.distance_mask(bmask | 1 << v) == d


__all__ = [
    "INF",
    "MAX_TERMINALS",
    "ResourceError",
    "SteinerOracle",
    "SteinerTable",
    "collect_tables",
    "from_mask",
    "naive_steiner_distance",
    "on_some_steiner_tree",
    "steiner_distance",
    "steiner_table",
]
