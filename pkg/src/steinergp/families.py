"""Constructors for the graph families and products used throughout the package.

Id layouts are fixed so that projections are plain arithmetic:

* ``join(g, h)``: g keeps ids ``0..n(g)-1``; h vertex ``j`` becomes ``n(g) + j``.
* ``lexicographic(g, h)``: vertex ``(a, b)`` gets id ``a * n(h) + b``.
* ``cartesian_grid(R)``: ``(x, y)`` gets id ``(y + R) * (2R + 1) + (x + R)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, GraphError, is_connected


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise GraphError(message)


def path(n: int) -> Graph:
    _require(n >= 1, "path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), provenance=f"path:{n}")


def cycle(n: int) -> Graph:
    _require(n >= 3, "cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], provenance=f"cycle:{n}")


def complete(n: int) -> Graph:
    _require(n >= 1, "complete needs n >= 1")
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)), provenance=f"complete:{n}")


def empty(n: int) -> Graph:
    _require(n >= 1, "empty needs n >= 1")
    return Graph(n, (), provenance=f"empty:{n}")


def star(r: int) -> Graph:
    """``K_{1,r}`` with the centre at id 0."""
    _require(r >= 1, "star needs r >= 1")
    return Graph(r + 1, tuple((0, i) for i in range(1, r + 1)), provenance=f"star:{r}")


def complete_bipartite(r: int, s: int) -> Graph:
    _require(r >= 1 and s >= 1, "complete_bipartite needs r, s >= 1")
    g = Graph(r + s, tuple((u, v) for u in range(r) for v in range(r, r + s)))
    return _tag(g, f"complete_bipartite:{r},{s}", factor_sizes=(r, s))


def wheel(n: int) -> Graph:
    """``W_n = K_1 v C_{n-1}``: hub 0, rim ``1..n-1`` in cyclic order."""
    _require(n >= 4, "wheel needs n >= 4")
    rim = n - 1
    edges = [(0, i) for i in range(1, n)]
    edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return _tag(Graph.from_edges(n, edges), f"wheel:{n}", factor_sizes=(1, rim))


def fan(n: int) -> Graph:
    """``F_n = K_1 v P_{n-1}``: hub 0, path ``1..n-1``."""
    _require(n >= 2, "fan needs n >= 2")
    edges = [(0, i) for i in range(1, n)] + [(i, i + 1) for i in range(1, n - 1)]
    return _tag(Graph.from_edges(n, edges), f"fan:{n}", factor_sizes=(1, n - 1))


def clique_join_empty(r: int, s: int) -> Graph:
    """``K_r v \\bar K_s``: clique on ``0..r-1``, independent set ``r..r+s-1``."""
    g = join(complete(r), empty(s))
    return _tag(g, f"clique_join_empty:{r},{s}", factor_sizes=(r, s), split_r=r)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, provenance="petersen")


def prufer_tree(seq: Sequence[int]) -> Graph:
    """Decode a Prüfer sequence over labels ``0..len(seq)+1``."""
    n = len(seq) + 2
    for x in seq:
        _require(0 <= x < n, f"Prüfer entry {x} outside [0, {n})")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(n) if degree[w] == 1)
    edges.append((u, v))
    return Graph.from_edges(n, edges, provenance="prufer:" + ",".join(map(str, seq)))


def _tag(g: Graph, provenance: str, **meta) -> Graph:
    return Graph(g.n, g.edges, g.labels, provenance, {**g.meta, **meta})


def join(g: Graph, h: Graph) -> Graph:
    off = g.n
    edges = list(g.edges)
    edges += [(u + off, v + off) for u, v in h.edges]
    edges += [(u, off + v) for u in range(g.n) for v in range(h.n)]
    labels = None
    if g.labels is not None or h.labels is not None:
        labels = [f"g:{g.label(v)}" for v in range(g.n)] + [f"h:{h.label(v)}" for v in range(h.n)]
    out = Graph.from_edges(g.n + h.n, edges, labels, provenance=f"join({g.provenance}/{h.provenance})")
    return _tag(out, out.provenance, factor_sizes=(g.n, h.n))


def lexicographic(g: Graph, h: Graph) -> Graph:
    nh = h.n
    edges = []
    for a in range(g.n):
        for b1, b2 in h.edges:
            edges.append((a * nh + b1, a * nh + b2))
    for a1, a2 in g.edges:
        for b1 in range(nh):
            for b2 in range(nh):
                edges.append((a1 * nh + b1, a2 * nh + b2))
    out = Graph.from_edges(g.n * nh, edges, provenance=f"lex({g.provenance}/{h.provenance})")
    return _tag(out, out.provenance, lex_factors=(g.n, nh))


def lex_projection(v: int, nh: int) -> tuple[int, int]:
    """``(g, h)`` coordinates of lexicographic-product vertex ``v``."""
    return divmod(v, nh)


@dataclass(frozen=True)
class GridSpec:
    radius: int

    @property
    def side(self) -> int:
        return 2 * self.radius + 1

    def vertex(self, x: int, y: int) -> int:
        r = self.radius
        if abs(x) > r or abs(y) > r:
            raise GraphError(f"({x}, {y}) lies outside the radius-{r} window")
        return (y + r) * self.side + (x + r)

    def coord(self, v: int) -> tuple[int, int]:
        y, x = divmod(v, self.side)
        return x - self.radius, y - self.radius

    @property
    def coordinate_map(self) -> dict[tuple[int, int], int]:
        r = self.radius
        return {(x, y): self.vertex(x, y) for y in range(-r, r + 1) for x in range(-r, r + 1)}


def cartesian_grid(radius: int) -> tuple[Graph, GridSpec]:
    """The ``(2R+1) x (2R+1)`` window of the infinite grid centred at the origin.

    Vertices ``(x, y)`` and ``(x', y')`` are adjacent iff ``|x-x'| + |y-y'| = 1``.
    """
    _require(radius >= 1, "grid radius must be >= 1")
    spec = GridSpec(radius)
    edges = []
    for (x, y), v in spec.coordinate_map.items():
        if x < radius:
            edges.append((v, spec.vertex(x + 1, y)))
        if y < radius:
            edges.append((v, spec.vertex(x, y + 1)))
    labels = [f"({x},{y})" for x, y in map(spec.coord, range(spec.side**2))]
    g = Graph.from_edges(spec.side**2, edges, labels, provenance=f"grid:{radius}", meta={"grid_radius": radius})
    return g, spec


def counterexample_gk(k: int) -> Graph:
    """Subdivided wheel ``G^(k)``.

    Start from ``K_1 v C_k`` with hub ``w`` and rim ``v1..vk``; every rim edge
    gets ``k-1`` subdivision vertices and every spoke ``k-2``.  Labels:
    ``w``, ``v{i}``, ``c{i}_{j}`` (j-th vertex from ``v{i}`` on the rim edge to
    ``v{i+1}``) and ``s{i}_{j}`` (j-th vertex from ``w`` on the spoke to ``v{i}``).
    For ``k = 3`` the last vertex before ``v{i+1}`` on each rim edge is renamed
    ``z``, ``y``, ``x`` as drawn in the original figure.
    """
    _require(k >= 3, "G^(k) needs k >= 3")
    labels = ["w"] + [f"v{i}" for i in range(1, k + 1)]
    edges = []
    ids = {name: i for i, name in enumerate(labels)}

    def add_chain(start: str, end: str, prefix: str, count: int) -> None:
        prev = ids[start]
        for j in range(1, count + 1):
            name = f"{prefix}_{j}"
            ids[name] = len(labels)
            labels.append(name)
            edges.append((prev, ids[name]))
            prev = ids[name]
        edges.append((prev, ids[end]))

    for i in range(1, k + 1):
        add_chain(f"v{i}", f"v{i % k + 1}", f"c{i}", k - 1)
    for i in range(1, k + 1):
        add_chain("w", f"v{i}", f"s{i}", k - 2)
    if k == 3:
        rename = {"c1_2": "z", "c2_2": "y", "c3_2": "x"}
        labels = [rename.get(x, x) for x in labels]
    return Graph.from_edges(len(labels), edges, labels, provenance=f"gk:{k}", meta={"gk": k})


def make_split(r: int, neighbor_lists: Iterable[Iterable[int]]) -> Graph:
    """Split graph: clique ``0..r-1`` plus one independent vertex per neighbour list."""
    _require(r >= 1, "split graph needs r >= 1")
    lists = [sorted(set(nb)) for nb in neighbor_lists]
    edges = [(u, v) for u in range(r) for v in range(u + 1, r)]
    for i, nb in enumerate(lists):
        for q in nb:
            _require(0 <= q < r, f"independent vertex {r + i} attached to {q}, outside the clique [0, {r})")
            edges.append((q, r + i))
    desc = ";".join(",".join(map(str, nb)) for nb in lists)
    g = Graph.from_edges(r + len(lists), edges, provenance=f"split:{r}|{desc}", meta={"split_r": r})
    _require(is_connected(g), "split graph must be connected")
    return g


FAMILY_HELP = """\
Family specs: name:param[,param]
  path:n  cycle:n  complete:n  empty:n  star:r  wheel:n  fan:n  petersen
  complete_bipartite:r,s  clique_join_empty:r,s  prufer:a,b,c,...
  gk:k (subdivided wheel G^(k))  grid:R
  join:<spec>/<spec>   lex:<spec>/<spec>   (one level of nesting)
"""


def make_family(text: str) -> Graph:
    """Build a graph from a family spec such as ``cycle:10`` or ``join:complete:1/cycle:6``."""
    text = text.strip()
    name, _, rest = text.partition(":")
    if name in ("join", "lex"):
        left, sep, right = rest.partition("/")
        if not sep:
            raise GraphError(f"{name} needs two factors separated by '/': {text!r}")
        a, b = make_family(left), make_family(right)
        return join(a, b) if name == "join" else lexicographic(a, b)
    try:
        params = [int(p) for p in rest.split(",")] if rest else []
    except ValueError:
        raise GraphError(f"non-integer parameter in family spec {text!r}") from None
    simple = {
        "path": path,
        "cycle": cycle,
        "complete": complete,
        "empty": empty,
        "star": star,
        "wheel": wheel,
        "fan": fan,
        "gk": counterexample_gk,
        "grid": lambda r: cartesian_grid(r)[0],
    }
    if name in simple:
        if len(params) != 1:
            raise GraphError(f"{name} takes exactly one parameter")
        return simple[name](params[0])
    if name in ("complete_bipartite", "clique_join_empty"):
        if len(params) != 2:
            raise GraphError(f"{name} takes two parameters r,s")
        return (complete_bipartite if name == "complete_bipartite" else clique_join_empty)(*params)
    if name == "petersen":
        return petersen()
    if name == "prufer":
        return prufer_tree(params)
    raise GraphError(f"unknown family {name!r}")
