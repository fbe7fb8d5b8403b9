import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from sharpramsey.graph import Graph, complete, complete_bipartite, cycle, path
from sharpramsey.homomorphism import (ColouredPattern, Target, are_isomorphic, automorphisms,
                                      blowup, find_homomorphism, hom_count, hom_density,
                                      is_homomorphism, iter_homomorphisms)
from sharpramsey.search import Budget, BudgetExceeded
from strategies import graphs


@st.composite
def coloured_patterns(draw, max_n=4, colours=2):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return ColouredPattern(n, [(u, v, draw(st.integers(1, colours))) for u, v in chosen])


def test_identity_on_single_edge():
    e = ColouredPattern(2, [(0, 1, 1)])
    assert find_homomorphism(e, e, pins={0: 0}) == (0, 1)


@pytest.mark.parametrize("k", [3, 5, 7])
def test_odd_cycle_does_not_fold_to_edge(k):
    assert find_homomorphism(cycle(k), complete(2)) is None
    assert find_homomorphism(cycle(k + 1), complete(2)) is not None


def test_colours_must_match():
    F = ColouredPattern(2, [(0, 1, 2)])
    G = ColouredPattern(2, [(0, 1, 1)])
    assert find_homomorphism(F, G) is None


def test_pins_are_respected():
    phi = find_homomorphism(path(3), complete(4), pins={0: 3, 2: 1})
    assert phi[0] == 3 and phi[2] == 1 and is_homomorphism(path(3), complete(4), phi)


def test_target_loops():
    # a loop at vertex 0 absorbs every edge
    T = Target(2, {1: [0b01, 0]})
    assert find_homomorphism(complete(4), T) == (0, 0, 0, 0)


def test_budget_exhaustion_raises():
    with pytest.raises(BudgetExceeded):
        list(iter_homomorphisms(path(6), complete(5), budget=Budget(max_nodes=5)))


@given(coloured_patterns(), coloured_patterns())
def test_hom_count_matches_brute_force(F, G):
    assert hom_count(F, G) == oracles.hom_count(F, G)


@given(graphs(max_n=5), graphs(max_n=4))
def test_iteration_matches_count(F, G):
    homs = list(iter_homomorphisms(F, G))
    assert len(homs) == len(set(homs)) == oracles.hom_count(F, G)
    assert all(is_homomorphism(F, G, phi) for phi in homs)


@given(graphs(max_n=5), graphs(max_n=5))
def test_find_is_complete(F, G):
    assert (find_homomorphism(F, G) is not None) == oracles.has_hom(F, G)


@given(graphs(max_n=4, min_m=1), graphs(max_n=3))
def test_hom_iff_subgraph_of_blowup(F, G):
    has = find_homomorphism(F, G) is not None
    assert has == oracles.is_subgraph(F, blowup(G, F.n))


def test_blowup_examples():
    assert are_isomorphic(blowup(complete(2), 2), cycle(4))
    assert blowup(path(4), 1) == path(4)
    b = blowup(complete(3), 2)
    assert b.m == 12 and are_isomorphic(b, Graph(6, [(u, v) for u in range(6) for v in
                                                    range(u + 1, 6) if u // 2 != v // 2]))
    with pytest.raises(ValueError):
        blowup(path(2), 0)


@given(graphs(max_n=4), st.integers(1, 3))
def test_blowup_shape(F, k):
    b = blowup(F, k)
    assert b.n == F.n * k and b.m == F.m * k * k


def test_hom_count_of_large_blowup_is_fast():
    # the five classes get pairwise disjoint nonempty image sets, so one colour each
    assert hom_count(blowup(complete(5), 3), complete(5)) == 120


@given(graphs(max_n=4), graphs(max_n=4), st.data())
def test_hom_density_monotone_under_subgraphs(F, G, data):
    keep = data.draw(st.lists(st.sampled_from(F.edges), unique=True) if F.edges else st.just([]))
    assert hom_density(Graph(F.n, keep), G) >= hom_density(F, G)


def test_hom_density_exact():
    assert hom_density(complete(2), complete(3)) == Fraction(6, 9)


@pytest.mark.parametrize("g,count", [(complete(4), 24), (cycle(5), 10), (path(4), 2),
                                     (complete_bipartite(2, 3), 12)])
def test_automorphism_counts(g, count):
    assert len(automorphisms(g)) == count


def test_isomorphism_respects_colour():
    a = ColouredPattern(3, [(0, 1, 1), (1, 2, 2)])
    b = ColouredPattern(3, [(0, 1, 2), (1, 2, 1)])
    c = ColouredPattern(3, [(0, 1, 1), (1, 2, 1)])
    assert are_isomorphic(a, b) and not are_isomorphic(a, c)


def test_hom_blowup_inequality_sample():
    rng = random.Random(5)
    for _ in range(20):
        F = Graph(3, [e for e in [(0, 1), (0, 2), (1, 2)] if rng.random() < 0.7])
        G = Graph(4, [e for e in [(0, 1), (0, 2), (1, 2), (2, 3), (0, 3)] if rng.random() < 0.7])
        k = rng.randint(1, 3)
        assert hom_density(blowup(F, k), G) >= hom_density(F, G) ** (k * F.n)
