"""Hypothesis strategies for small graphs and hypergraphs."""

from itertools import combinations

from hypothesis import strategies as st

from sharpramsey.graph import Graph
from sharpramsey.hypergraph import UniformHypergraph


@st.composite
def graphs(draw, min_n=1, max_n=6, min_m=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=min(min_m, len(pairs)))
                  if pairs else st.just([]))
    return Graph(n, chosen)


@st.composite
def hypergraphs(draw, s=3, min_n=3, max_n=7, max_m=None):
    n = draw(st.integers(max(min_n, s), max_n))
    cand = list(combinations(range(n), s))
    chosen = draw(st.lists(st.sampled_from(cand), unique=True, max_size=max_m or len(cand)))
    return UniformHypergraph(s, n, chosen)
