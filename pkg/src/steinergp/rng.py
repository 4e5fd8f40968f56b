"""Reproducible randomness: xoshiro256** seeded through splitmix64.

Both generators are the published reference algorithms, so a given seed
yields the same stream in any language.
"""

from __future__ import annotations

from .families import make_split, prufer_tree
from .graph import Graph

_MASK = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class Xoshiro256:
    """xoshiro256** 1.0."""

    def __init__(self, seed: int):
        sm = seed & _MASK
        self.s = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            self.s.append(out)

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self) -> float:
        """Uniform double in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


def random_graph(n: int, edge_probability: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p): pairs ``(u, v)``, ``u < v``, in lexicographic order, one draw each."""
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = Xoshiro256(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_probability]
    return Graph(n, tuple(edges), provenance=f"random:{n},{edge_probability},{seed}")


def random_tree(n: int, rng: Xoshiro256) -> Graph:
    """Uniform labelled tree on ``n >= 2`` vertices via a random Prüfer sequence."""
    if n == 2:
        return prufer_tree([])
    return prufer_tree([rng.below(n) for _ in range(n - 2)])


def random_split(r: int, s: int, rng: Xoshiro256) -> Graph:
    """Split graph with clique ``0..r-1``; each independent vertex gets a nonempty random neighbour set."""
    lists = []
    for _ in range(s):
        nb = [q for q in range(r) if rng.random() < 0.5]
        if not nb:
            nb = [rng.below(r)]
        lists.append(nb)
    return make_split(r, lists)
