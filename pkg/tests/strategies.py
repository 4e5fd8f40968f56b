from itertools import combinations

from hypothesis import strategies as st

from steinergp.graph import Graph


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected:
        # a random spanning path order keeps the graph connected
        order = draw(st.permutations(range(n)))
        chosen = set(chosen) | {tuple(sorted(p)) for p in zip(order, order[1:])}
    return Graph.from_edges(n, chosen)


@st.composite
def graph_and_subset(draw, min_n=1, max_n=7, connected=False):
    g = draw(graphs(min_n, max_n, connected))
    a = draw(st.sets(st.integers(0, g.n - 1))) if g.n else set()
    return g, tuple(sorted(a))
