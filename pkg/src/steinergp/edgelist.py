"""Edge-list text format.

First data line ``n m``, then ``m`` lines ``u v`` with 0-based ids.  Blank
lines and ``#`` comments are ignored.  The writer emits sorted edges, so
``write(read(write(g)))`` is byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .graph import Graph, GraphError


class EdgeListError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def dumps(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def loads(text: str, provenance: str = "edgelist") -> Graph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected two integers, got {raw.strip()!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"non-integer token in {raw.strip()!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListError("negative vertex or edge count", lineno)
            header = (a, b)
            continue
        n = header[0]
        if a == b:
            raise EdgeListError(f"loop at vertex {a}", lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise EdgeListError(f"vertex out of range [0, {n})", lineno)
        edges.append((a, b))
    if header is None:
        raise EdgeListError("missing 'n m' header")
    n, m = header
    g = Graph.from_edges(n, edges, provenance=provenance)
    if len(edges) != m or g.m != m:
        raise EdgeListError(f"header announces {m} edges, found {len(edges)} ({g.m} distinct)")
    return g


def read(path: str | Path) -> Graph:
    """Read an edge list; labels and metadata come from ``<path>.json`` when present."""
    path = Path(path)
    g = loads(path.read_text(), provenance=f"file:{path.name}")
    side = Path(str(path) + ".json")
    if not side.exists():
        return g
    try:
        data = json.loads(side.read_text())
    except json.JSONDecodeError as exc:
        raise EdgeListError(f"unreadable sidecar {side.name}: {exc}") from None
    meta = {key: data[key] for key in ("split_r", "grid_radius") if key in data}
    labels = data.get("labels")
    return Graph(g.n, g.edges, tuple(labels) if labels else None, data.get("provenance", g.provenance), meta)


def write(g: Graph, path: str | Path) -> None:
    Path(path).write_text(dumps(g))


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(dumps(g).encode()).hexdigest()


def sidecar(g: Graph) -> dict:
    """Metadata written next to a generated edge list."""
    data: dict = {"n": g.n, "m": g.m, "provenance": g.provenance}
    if g.labels is not None:
        data["labels"] = list(g.labels)
    radius = g.meta.get("grid_radius")
    if radius is not None:
        from .families import GridSpec

        spec = GridSpec(int(radius))
        data["grid_radius"] = int(radius)
        data["coordinates"] = [list(spec.coord(v)) for v in range(g.n)]
    if "split_r" in g.meta:
        data["split_r"] = g.meta["split_r"]
    return data


def write_sidecar(g: Graph, path: str | Path) -> Path:
    out = Path(str(path) + ".json")
    out.write_text(json.dumps(sidecar(g), indent=2, sort_keys=True) + "\n")
    return out
