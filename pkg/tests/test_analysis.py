from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from sharpramsey.analysis import (ConstellationSpec, StarSpec, _max_density_flow,
                                  build_constellation, build_rainbow_star, density_report,
                                  graph_report, has_rainbow_sc_property,
                                  has_rainbow_sc_property_direct, helpful_lemma_check,
                                  is_collapsible, is_semi_collapsible, is_strictly_2_balanced,
                                  max_density, max_density_witness, nearly_bipartite,
                                  star_types, two_density, two_density_witness)
from sharpramsey.graph import Graph, complete, complete_bipartite, cycle, path, petersen
from sharpramsey.homomorphism import are_isomorphic, find_homomorphism, is_homomorphism
from strategies import graphs

PETERSEN_PLUS = Graph(10, list(petersen().edges) + [(0, 2)])


# -- densities -----------------------------------------------------------------------

@pytest.mark.parametrize("g,value", [
    (complete(3), Fraction(2)),
    (cycle(4), Fraction(3, 2)),
    (complete(4), Fraction(5, 2)),
    (complete(2), Fraction(1, 2)),
    (path(3), Fraction(1)),
    (Graph(4, [(0, 1)]), Fraction(1, 2)),
    (cycle(5), Fraction(4, 3)),
    (petersen(), Fraction(7, 4)),
])
def test_two_density_fixtures(g, value):
    assert two_density(g) == value


def test_two_density_witness_attains_value():
    g = Graph(5, list(complete(4).edges) + [(3, 4)])
    val, S = two_density_witness(g)
    assert val == Fraction(5, 2) and S == [0, 1, 2, 3]


@given(graphs(min_n=2, max_n=7, min_m=1))
def test_two_density_matches_enumeration(g):
    assert two_density(g) == oracles.two_density(g.n, g.edges)


@given(graphs(min_n=2, max_n=7, min_m=1), st.data())
def test_two_density_monotone_under_subgraphs(g, data):
    keep = data.draw(st.lists(st.sampled_from(g.edges), unique=True, min_size=1))
    assert two_density(Graph(g.n, keep)) <= two_density(g)


@pytest.mark.parametrize("g,value", [
    (complete_bipartite(3, 3), Fraction(3, 2)),
    (path(4), Fraction(3, 4)),
    (complete(5), Fraction(2)),
])
def test_max_density_fixtures(g, value):
    assert max_density(g) == value


@given(graphs(min_n=1, max_n=7))
def test_max_density_matches_enumeration(g):
    assert max_density(g) == oracles.max_density(g.n, g.edges)


@given(graphs(min_n=1, max_n=9))
def test_flow_route_matches_enumeration(g):
    val, S = _max_density_flow(g)
    assert val == max_density_witness(g)[0]
    assert Fraction(oracles.induced_edge_count(g.edges, S), len(S)) == val


def test_flow_route_on_large_graph():
    # K_6 plus a long pendant path: the dense part wins
    edges = list(complete(6).edges) + [(i, i + 1) for i in range(5, 29)]
    g = Graph(30, edges)
    assert max_density(g) == Fraction(15, 6)
    assert max_density_witness(g)[1] == list(range(6))


@pytest.mark.parametrize("g,expected", [
    (complete(4), True), (cycle(5), True), (complete(3), True),
    (Graph(5, list(complete(4).edges) + [(3, 4)]), False),
])
def test_strictly_2_balanced(g, expected):
    ok, witness = is_strictly_2_balanced(g)
    assert ok is expected
    if not ok:
        assert witness == [0, 1, 2, 3]


@pytest.mark.parametrize("g,expected", [
    (cycle(5), True), (complete(4), False), (complete(3), True), (petersen(), False),
    (complete_bipartite(2, 3), True),
])
def test_nearly_bipartite(g, expected):
    ok, e = nearly_bipartite(g)
    assert ok is expected
    if ok and e is not None:
        assert g.remove_edge(e).is_bipartite()


def test_density_report_floor():
    # every subgraph on 3+ vertices has at most one edge
    rep = density_report(Graph(5, [(0, 1), (3, 4)]))
    assert rep.m2 == Fraction(1, 2) and rep.m2 >= Fraction(1, 2)


@pytest.mark.parametrize("g", [complete(4), complete(5), cycle(5), cycle(7), petersen(),
                               complete(3)])
def test_vertex_sets_carry_excess_edges(g):
    ok, bad = helpful_lemma_check(g)
    assert ok and bad is None


def test_excess_edges_c5_singletons():
    # a vertex of C_5 has 2 incident edges, more than m_2 = 4/3
    assert two_density(cycle(5)) * 1 < 2


# -- collapsibility ------------------------------------------------------------------

FIXTURES = {
    "K4": complete(4), "K5": complete(5), "C5": cycle(5), "C7": cycle(7),
    "petersen": petersen(), "petersen+edge": PETERSEN_PLUS, "K3": complete(3),
}


def _check_collapse_witness(H, witness):
    for (e, a), (f, phi) in witness.items():
        He, Hf = H.remove_edge(e), H.remove_edge(f)
        assert is_homomorphism(Hf, He, phi)
        assert phi[f[0]] == phi[f[1]] == a


@pytest.mark.parametrize("name,expected", [("K4", True), ("K5", True), ("C5", True),
                                           ("C7", True), ("K3", True), ("petersen", False),
                                           ("petersen+edge", False)])
def test_collapsible_fixtures(name, expected):
    H = FIXTURES[name]
    d = is_collapsible(H)
    assert d.verdict is expected
    if expected:
        _check_collapse_witness(H, d.witness)
    else:
        e, a = d.witness
        He = H.remove_edge(e)
        # exhaustive certificate: no edge f collapses into a
        for f in H.edges:
            assert find_homomorphism(H.remove_edge(f), He, {f[0]: a, f[1]: a}) is None


def test_cycle_four_not_collapsible():
    assert is_collapsible(cycle(4)).verdict is False


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_collapsible_implies_semi(name):
    H = FIXTURES[name]
    if is_collapsible(H).verdict:
        assert is_semi_collapsible(H).verdict


def test_semi_collapsible_examples():
    assert is_semi_collapsible(complete(3)).verdict is True
    d = is_semi_collapsible(petersen())
    assert d.verdict is False
    e = d.witness
    He = petersen().remove_edge(e)
    for f in petersen().edges:
        for x in range(10):
            assert find_homomorphism(petersen().remove_edge(f), He, {f[0]: x, f[1]: x}) is None


# -- rainbow stars and constellations ------------------------------------------------

def test_star_sizes():
    K3 = complete(3)
    star = build_rainbow_star(StarSpec(K3, 2, ((0, 1),)))
    assert star.n == 3 and are_isomorphic(star.underlying(), path(3))
    assert StarSpec(K3, 3, ((0, 1), (0, 2))).num_vertices == 4
    assert build_rainbow_star(StarSpec(K3, 3, ((0, 1), (1, 2)))).n == 4
    spec = ConstellationSpec(K3, tuple(StarSpec(K3, 2, ((0, 1),)) for _ in range(3)),
                             (False,) * 3)
    assert spec.num_vertices == 6 and build_constellation(spec).n == 6


def test_star_is_generic():
    H = petersen()
    star = build_rainbow_star(StarSpec(H, 3, ((0, 1), (2, 3))))
    c1 = {v for u, w, c in star.coloured_edges if c == 1 for v in (u, w)}
    c2 = {v for u, w, c in star.coloured_edges if c == 2 for v in (u, w)}
    assert c1 & c2 == {0, 1}
    assert star.n == 8 * 2 + 2


def test_constellation_is_generic():
    H = cycle(4)
    stars = tuple(StarSpec(H, 3, ((0, 1), (1, 2))) for _ in range(H.m))
    C = build_constellation(ConstellationSpec(H, stars, (False, True, False, True)))
    assert C.n == H.m * 2 * 2 + 4
    assert len(C.coloured_edges) == H.m * 2 * (H.m - 1)


@pytest.mark.parametrize("H,r", [(complete(3), 2), (complete(3), 3), (cycle(4), 2),
                                 (path(3), 3), (cycle(5), 2), (complete(4), 2)])
def test_star_type_dedup_is_exact(H, r):
    """Deduplicated types are pairwise non-isomorphic and cover every star."""
    def pattern(spec):
        return build_rainbow_star(spec)

    reps = [pattern(s) for s in star_types(H, r, dedup=True)]
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            assert not are_isomorphic(reps[i], reps[j])
    for spec in star_types(H, r, dedup=False):
        assert any(are_isomorphic(pattern(spec), R) for R in reps)


def test_petersen_has_one_star_type_for_two_colours():
    assert len(star_types(petersen(), 2)) == 1


@pytest.mark.parametrize("H,r", [(complete(3), 2), (path(3), 2), (path(3), 3), (cycle(4), 2),
                                 (path(4), 2), (complete(3), 3)])
def test_rsc_matches_direct_search(H, r):
    assert has_rainbow_sc_property(H, r).verdict == has_rainbow_sc_property_direct(H, r)


@pytest.mark.parametrize("name,r,expected", [
    ("K4", 2, True), ("K4", 3, True), ("K5", 3, True), ("C5", 3, True), ("C7", 3, True),
    ("petersen", 2, False), ("petersen", 3, False), ("petersen+edge", 3, False),
])
def test_rsc_fixtures(name, r, expected):
    d = has_rainbow_sc_property(FIXTURES[name], r)
    assert d.verdict is expected
    if expected:
        for w in d.witness:
            assert is_homomorphism(build_constellation(w.constellation),
                                   build_rainbow_star(w.star), w.phi)


@pytest.mark.parametrize("name", ["K4", "K5", "C5", "C7", "petersen", "petersen+edge"])
def test_rsc_three_colours_matches_collapsible(name):
    H = FIXTURES[name]
    assert has_rainbow_sc_property(H, 3).verdict == is_collapsible(H).verdict


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_semi_collapsible_implies_rsc_two(name):
    H = FIXTURES[name]
    if is_semi_collapsible(H).verdict:
        assert has_rainbow_sc_property(H, 2).verdict


@pytest.mark.parametrize("H", [cycle(4), cycle(6), complete_bipartite(2, 3), path(4)])
@pytest.mark.parametrize("r", [2, 3])
def test_bipartite_patterns_have_rsc(H, r):
    assert has_rainbow_sc_property(H, r).verdict is True


def test_rsc_cap_gives_inconclusive():
    d = has_rainbow_sc_property(complete(4), 3, max_star_types=0)
    assert d.verdict is None and d.inconclusive


def test_rsc_rejects_bad_input():
    with pytest.raises(ValueError):
        has_rainbow_sc_property(Graph(4, [(0, 1), (2, 3)]), 2)
    with pytest.raises(ValueError):
        has_rainbow_sc_property(complete(3), 1)


def test_graph_report_shape():
    rep = graph_report(petersen()).as_dict()
    assert rep["m2"] == "7/4"
    assert rep["collapsible"] is False and rep["semi_collapsible"] is False
    assert rep["rsc"] == {"2": False, "3": False}
    assert rep["strictly_2_balanced"] is True and rep["nearly_bipartite"] is False
