"""Immutable simple graphs on dense integer vertex ids, plus structural queries.

Vertices are ``0..n-1``.  Sets of vertices travel either as sorted tuples
(the public ``VertexSet`` currency) or as int bitmasks internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

VertexSet = tuple[int, ...]

# Python ints are unbounded, so the bitmask code does not need a word-size cap;
# this only guards against accidentally feeding huge graphs to exponential code.
MAX_VERTICES = 256


class GraphError(ValueError):
    """Raised for invalid graph parameters or malformed graph input."""


def vertex_set(vertices: Iterable[int], n: int | None = None) -> VertexSet:
    """Normalize ``vertices`` to a sorted duplicate-free tuple, validating ids."""
    members = tuple(sorted(set(int(v) for v in vertices)))
    if n is not None:
        for v in members:
            if not 0 <= v < n:
                raise GraphError(f"vertex {v} out of range [0, {n})")
    return members


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> VertexSet:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None
    provenance: str = "custom"
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        if self.n > MAX_VERTICES:
            raise GraphError(f"graph has {self.n} vertices; the cap is {MAX_VERTICES}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge ({u}, {v}) is not a canonical pair in [0, {self.n})")
            if (u, v) in seen:
                raise GraphError(f"parallel edge ({u}, {v})")
            seen.add((u, v))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise GraphError("label count differs from vertex count")
            if len(set(self.labels)) != self.n:
                raise GraphError("labels must be injective")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Sequence[str] | None = None,
        provenance: str = "custom",
        meta: Mapping[str, object] | None = None,
    ) -> Graph:
        """Build a graph from arbitrary-order edges; duplicates in either orientation collapse."""
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            canon.add((min(u, v), max(u, v)))
        return cls(
            n,
            tuple(sorted(canon)),
            tuple(labels) if labels is not None else None,
            provenance,
            dict(meta or {}),
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, provenance={self.provenance!r})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of every vertex."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs BFS distances as floats, ``inf`` between components."""
        dist = np.full((self.n, self.n), np.inf)
        for s in range(self.n):
            dist[s, s] = 0
            frontier, seen, d = 1 << s, 1 << s, 0
            while frontier:
                d += 1
                nxt = 0
                for v in from_mask(frontier):
                    nxt |= self.adj[v]
                nxt &= ~seen
                seen |= nxt
                for v in from_mask(nxt):
                    dist[s, v] = d
                frontier = nxt
        return dist

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex(self, label: str) -> int:
        """Vertex id carrying ``label``."""
        if self.labels is None:
            return int(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"no vertex labelled {label!r}") from None

    def vertices(self, *labels: str) -> VertexSet:
        return vertex_set((self.vertex(x) for x in labels), self.n)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()


popcount = int.bit_count


def is_connected_mask(g: Graph, mask: int) -> bool:
    """Whether the subgraph induced by ``mask`` is connected (empty counts as connected)."""
    if not mask:
        return True
    start = mask & -mask
    seen = frontier = start
    while frontier:
        nxt = 0
        for v in from_mask(frontier):
            nxt |= g.adj[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def degrees(g: Graph) -> list[int]:
    return [popcount(a) for a in g.adj]


def leaves(g: Graph) -> VertexSet:
    return tuple(v for v in range(g.n) if popcount(g.adj[v]) == 1)


def components(g: Graph) -> list[VertexSet]:
    remaining = g.full_mask
    out = []
    while remaining:
        start = remaining & -remaining
        seen = frontier = start
        while frontier:
            nxt = 0
            for v in from_mask(frontier):
                nxt |= g.adj[v]
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
        out.append(from_mask(seen))
        remaining &= ~seen
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and is_connected_mask(g, g.full_mask)


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def complement(g: Graph) -> Graph:
    edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    return Graph(g.n, tuple(edges), g.labels, f"complement({g.provenance})")


def induced_subgraph(g: Graph, a: Iterable[int]) -> tuple[Graph, VertexSet]:
    """Subgraph induced by ``a``; vertex ``i`` of the result is ``remap[i]`` in ``g``."""
    remap = vertex_set(a, g.n)
    index = {v: i for i, v in enumerate(remap)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    labels = tuple(g.labels[v] for v in remap) if g.labels is not None else None
    return Graph(len(remap), tuple(sorted(edges)), labels, f"induced({g.provenance})"), remap


def clique_number(g: Graph) -> tuple[int, VertexSet]:
    """Maximum clique by branch and bound over candidate bitmasks.

    Returns the size and the lexicographically smallest maximum clique.
    """
    best: list[int] = []

    def expand(chosen: list[int], cand: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen[:]
        while cand:
            if len(chosen) + popcount(cand) <= len(best):
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            chosen.append(v)
            expand(chosen, cand & g.adj[v])
            chosen.pop()

    expand([], g.full_mask)
    return len(best), tuple(best)



def vertex_connectivity(g: Graph) -> int:
    """Minimum vertex cut size.

    Conventions: ``K_n`` gives ``n - 1`` and a disconnected (or empty) graph gives 0.
    Backed by networkx's flow-based ``node_connectivity``.
    """
    import networkx as nx

    if g.n <= 1 or not is_connected(g):
        return 0
    if g.m == g.n * (g.n - 1) // 2:
        return g.n - 1
    return nx.node_connectivity(to_networkx(g))


def to_networkx(g: Graph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def relabel(g: Graph, mapping: Sequence[int]) -> Graph:
    """Apply the vertex bijection ``v -> mapping[v]``."""
    if sorted(mapping) != list(range(g.n)):
        raise GraphError("mapping is not a permutation of the vertex ids")
    labels = None
    if g.labels is not None:
        new = [""] * g.n
        for v, w in enumerate(mapping):
            new[w] = g.labels[v]
        labels = new
    return Graph.from_edges(g.n, ((mapping[u], mapping[v]) for u, v in g.edges), labels, g.provenance)
