"""Densities, balancedness, collapsibility and the rainbow star-constellation criterion."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import networkx as nx
import numpy as np

from .graph import Graph, two_colouring
from .homomorphism import (ColouredPattern, Target, automorphisms,
                           find_homomorphism, is_homomorphism)
from .search import Budget, BudgetExceeded, Decision

ENUMERATION_LIMIT = 20


# -- densities -----------------------------------------------------------------

def _subset_edge_counts(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Vertex and induced edge counts of every vertex subset, indexed by bitmask."""
    if g.n > ENUMERATION_LIMIT + 2:
        raise ValueError(f"subset enumeration limited to {ENUMERATION_LIMIT + 2} vertices")
    masks = np.arange(1 << g.n, dtype=np.int64)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for v in range(g.n):
        sizes += (masks >> v) & 1
    edges = np.zeros(masks.shape, dtype=np.int64)
    for u, v in g.edges:
        edges += ((masks >> u) & (masks >> v)) & 1
    return sizes, edges


def _mask_vertices(mask: int) -> list[int]:
    return [v for v in range(mask.bit_length()) if (mask >> v) & 1]


def _argmax_ratio(num: np.ndarray, den: np.ndarray, ok: np.ndarray) -> tuple[Fraction, int] | None:
    """Exact maximum of num/den over ``ok`` entries; the smallest such mask."""
    idx = np.flatnonzero(ok)
    if idx.size == 0:
        return None
    ratio = num[idx] / den[idx]
    top = ratio.max()
    best = None
    for i in idx[ratio >= top - 1e-9]:
        f = Fraction(int(num[i]), int(den[i]))
        if best is None or f > best[0]:
            best = (f, int(i))
    return best


def two_density_witness(H: Graph) -> tuple[Fraction, list[int] | None]:
    """``m_2(H)`` and a vertex set whose induced subgraph attains it
    (None when the 1/2 floor is the maximum)."""
    if H.m == 0:
        raise ValueError("2-density needs at least one edge")
    sizes, edges = _subset_edge_counts(H)
    best = _argmax_ratio(edges - 1, sizes - 2, sizes >= 3)
    if best is None or best[0] <= Fraction(1, 2):
        return Fraction(1, 2), None
    return best[0], _mask_vertices(best[1])


def two_density(H: Graph) -> Fraction:
    """Max of ``(e_F - 1)/(v_F - 2)`` over subgraphs with at least 3 vertices,
    and at least 1/2."""
    return two_density_witness(H)[0]


def max_density(G: Graph) -> Fraction:
    """Max of ``e_F / v_F`` over nonempty subgraphs, exact."""
    return max_density_witness(G)[0]


def max_density_witness(G: Graph) -> tuple[Fraction, list[int]]:
    if G.n == 0:
        raise ValueError("max density needs a vertex")
    if G.n <= ENUMERATION_LIMIT:
        sizes, edges = _subset_edge_counts(G)
        f, mask = _argmax_ratio(edges, sizes, sizes >= 1)
        return f, _mask_vertices(mask)
    return _max_density_flow(G)


def _max_density_flow(G: Graph) -> tuple[Fraction, list[int]]:
    """Dinkelbach iteration; each step maximises ``e(S) - lam*|S|`` as a
    max-weight closure (edges need both endpoints) solved by minimum cut."""
    if G.m == 0:
        return Fraction(0), [0]
    best_set = list(range(G.n))
    lam = Fraction(G.m, G.n)
    while True:
        p, q = lam.numerator, lam.denominator
        net = nx.DiGraph()
        for i, (u, v) in enumerate(G.edges):
            net.add_edge("s", ("e", i), capacity=q)
            net.add_edge(("e", i), ("v", u))
            net.add_edge(("e", i), ("v", v))
        for v in range(G.n):
            net.add_edge(("v", v), "t", capacity=p)
        cut, (side, _) = nx.minimum_cut(net, "s", "t")
        gain = q * G.m - cut  # q * max over S of e(S) - lam |S|
        S = sorted(x[1] for x in side if isinstance(x, tuple) and x[0] == "v")
        if gain <= 0 or not S:
            return lam, best_set
        eS = sum(1 for u, v in G.edges if u in S and v in S) if len(S) < 64 else \
            len(G.induced(S).edges)
        lam, best_set = Fraction(eS, len(S)), S


def is_strictly_2_balanced(H: Graph) -> tuple[bool, list[int] | None]:
    """Whether every proper subgraph with at least 3 vertices has smaller
    2-density; otherwise a violating vertex set.

    Subgraphs on fewer vertices only reach the 1/2 floor, and dropping edges
    only lowers the ratio, so induced proper subsets suffice. ``H`` is read
    as its non-isolated part.
    """
    core = H.induced(H.non_isolated())
    if core.n < 3:
        return True, None
    target = Fraction(core.m - 1, core.n - 2)
    sizes, edges = _subset_edge_counts(core)
    full = (1 << core.n) - 1
    ok = (sizes >= 3) & (np.arange(1 << core.n) != full)
    best = _argmax_ratio(edges - 1, sizes - 2, ok)
    if best is None or best[0] < target:
        return True, None
    return False, [core_v for core_v in _lift(H, _mask_vertices(best[1]))]


def _lift(H: Graph, core_vertices: list[int]) -> list[int]:
    ni = H.non_isolated()
    return [ni[i] for i in core_vertices]


def nearly_bipartite(H: Graph) -> tuple[bool, tuple[int, int] | None]:
    """Whether deleting some single edge leaves a bipartite graph."""
    for e in H.edges:
        if two_colouring(H.remove_edge(e)) is not None:
            return True, e
    return False, None


@dataclass(frozen=True)
class DensityReport:
    m2: Fraction
    m: Fraction
    strictly_2_balanced: bool
    nearly_bipartite: bool


def density_report(H: Graph) -> DensityReport:
    return DensityReport(two_density(H), max_density(H),
                         is_strictly_2_balanced(H)[0], nearly_bipartite(H)[0])


def edges_incident(H: Graph, W) -> int:
    W = set(W)
    return sum(1 for u, v in H.edges if u in W or v in W)


def helpful_lemma_check(H: Graph) -> tuple[bool, list[int] | None]:
    """For strictly 2-balanced ``H``, check ``m_2(H)|W| < ebar(W)`` for every
    W with ``1 <= |W| <= v_H - 3``; returns the first violating W."""
    if not is_strictly_2_balanced(H)[0]:
        raise ValueError("H must be strictly 2-balanced")
    m2 = two_density(H)
    for k in range(1, H.n - 2):
        for W in combinations(range(H.n), k):
            if not m2 * k < edges_incident(H, W):
                return False, list(W)
    return True, None


# -- collapsibility ----------------------------------------------------------

def is_collapsible(H: Graph, budget: Budget | None = None) -> Decision:
    """For every edge e and endpoint a of e: some edge f and a homomorphism
    ``H - f -> H - e`` sending both ends of f to a.

    Witness on True: ``{(e, a): (f, phi)}``. On False the witness is the
    failing ``(e, a)``.
    """
    if H.m == 0:
        raise ValueError("H needs an edge")
    budget = budget or Budget()
    minus = {e: H.remove_edge(e) for e in H.edges}
    witness = {}
    try:
        for e in H.edges:
            for a in e:
                found = None
                for f in H.edges:
                    phi = find_homomorphism(minus[f], minus[e], {f[0]: a, f[1]: a}, budget=budget)
                    if phi is not None:
                        found = (f, phi)
                        break
                if found is None:
                    return Decision(False, (e, a), budget.nodes)
                witness[(e, a)] = found
    except BudgetExceeded:
        return Decision(None, None, budget.nodes)
    return Decision(True, witness, budget.nodes)


def is_semi_collapsible(H: Graph, budget: Budget | None = None) -> Decision:
    """For every edge e: some edge f and a homomorphism ``H - f -> H - e``
    identifying the ends of f. Witness on True: ``{e: (f, phi)}``; on False
    the failing edge."""
    if H.m == 0:
        raise ValueError("H needs an edge")
    budget = budget or Budget()
    minus = {e: H.remove_edge(e) for e in H.edges}
    witness = {}
    try:
        for e in H.edges:
            found = None
            for f in H.edges:
                for z in range(H.n):
                    phi = find_homomorphism(minus[f], minus[e], {f[0]: z, f[1]: z}, budget=budget)
                    if phi is not None:
                        found = (f, phi)
                        break
                if found:
                    break
            if found is None:
                return Decision(False, e, budget.nodes)
            witness[e] = found
    except BudgetExceeded:
        return Decision(None, None, budget.nodes)
    return Decision(True, witness, budget.nodes)


# -- rainbow stars and constellations ------------------------------------------

@dataclass(frozen=True)
class StarSpec:
    """``removed[j-1] = (a, b)``: colour j carries ``H - ab`` glued with a on
    centre 0 and b on centre 1."""

    H: Graph
    r: int
    removed: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.removed) != self.r - 1:
            raise ValueError(f"need {self.r - 1} removed edges, got {len(self.removed)}")
        for a, b in self.removed:
            if not self.H.has_edge(a, b):
                raise ValueError(f"({a}, {b}) is not an edge of H")

    @property
    def num_vertices(self) -> int:
        return (self.H.n - 2) * (self.r - 1) + 2


def _glue_copy(H: Graph, a: int, b: int, at: tuple[int, int], colour: int,
               next_free: int) -> tuple[list[tuple[int, int, int]], dict[int, int], int]:
    """Place ``H - ab`` with a, b on ``at`` and fresh vertices elsewhere."""
    place = {a: at[0], b: at[1]}
    for w in range(H.n):
        if w not in place:
            place[w] = next_free
            next_free += 1
    edges = [(place[u], place[v], colour) for u, v in H.edges if {u, v} != {a, b}]
    return edges, place, next_free


def build_rainbow_star(spec: StarSpec) -> ColouredPattern:
    """Generic star: r-1 coloured copies sharing only the centre pair (0, 1)."""
    edges = []
    nxt = 2
    for j, (a, b) in enumerate(spec.removed, start=1):
        es, _, nxt = _glue_copy(spec.H, a, b, (0, 1), j, nxt)
        edges += es
    assert nxt == spec.num_vertices
    return ColouredPattern(nxt, edges, distinguished=(0, 1))


@dataclass(frozen=True)
class ConstellationSpec:
    """One star per edge of ``H`` (in ``H.edges`` order). ``flipped[i]`` puts
    centre 0 of star i on the larger endpoint of edge i."""

    H: Graph
    stars: tuple[StarSpec, ...]
    flipped: tuple[bool, ...]

    def __post_init__(self):
        if len(self.stars) != self.H.m or len(self.flipped) != self.H.m:
            raise ValueError("one star per edge of H is required")

    @property
    def r(self) -> int:
        return self.stars[0].r

    @property
    def num_vertices(self) -> int:
        H = self.H
        return H.m * (H.n - 2) * (self.r - 1) + H.n


def _constellation_layout(spec: ConstellationSpec):
    """Edges plus, per (star index, colour), the placement of H's vertices."""
    H = spec.H
    edges = []
    places = {}
    nxt = H.n
    for i, ((u, v), star, flip) in enumerate(zip(H.edges, spec.stars, spec.flipped)):
        at = (v, u) if flip else (u, v)
        for j, (a, b) in enumerate(star.removed, start=1):
            es, place, nxt = _glue_copy(star.H, a, b, at, j, nxt)
            edges += es
            places[(i, j)] = place
    return edges, places, nxt


def build_constellation(spec: ConstellationSpec) -> ColouredPattern:
    """Edge-disjoint generic stars whose centre pairs are the edges of a copy
    of ``H`` on base vertices ``0..v_H-1``."""
    edges, _, n = _constellation_layout(spec)
    assert n == spec.num_vertices
    return ColouredPattern(n, edges, distinguished=tuple(range(spec.H.n)))


def _oriented_edges(H: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in H.edges] + [(v, u) for u, v in H.edges]


def _arc_orbits(H: Graph, auts) -> list[tuple[int, int]]:
    """One representative (the smallest) per Aut(H)-orbit of oriented edges."""
    seen, reps = set(), []
    for arc in sorted(_oriented_edges(H)):
        if arc in seen:
            continue
        reps.append(arc)
        for g in auts:
            seen.add((g[arc[0]], g[arc[1]]))
    return reps


def star_types(H: Graph, r: int, dedup: bool = True) -> list[StarSpec]:
    """Star specs up to colour-preserving isomorphism.

    The colour classes of a generic star meet only in the centre pair, so an
    isomorphism acts by an automorphism of H on each class independently,
    possibly swapping the two centres for all classes at once. Types are
    therefore tuples of arc orbits modulo one global reversal.
    """
    if dedup:
        auts = automorphisms(H)
        reps = _arc_orbits(H, auts)
        orbit_of = {}
        for rep in reps:
            for g in auts:
                orbit_of[(g[rep[0]], g[rep[1]])] = rep
        out, seen = [], set()
        for combo in product(reps, repeat=r - 1):
            flipped = tuple(orbit_of[(b, a)] for a, b in combo)
            key = min(combo, flipped)
            if key in seen:
                continue
            seen.add(key)
            out.append(StarSpec(H, r, combo))
        return out
    return [StarSpec(H, r, combo) for combo in product(_oriented_edges(H), repeat=r - 1)]


@dataclass
class RainbowWitness:
    star: StarSpec
    constellation: ConstellationSpec
    phi: tuple[int, ...]


def _pinned_arc_relation(H: Graph, S: ColouredPattern, j: int, reps, budget) -> dict:
    """``{(x, y): (a, b, psi)}`` for pairs reachable by a pinned homomorphism
    ``H - ab -> (colour-j part of S)`` with a -> x, b -> y."""
    Sj = Target(S.n, {1: S.masks().get(j, [0] * S.n)})
    found = {}
    for a, b in reps:
        Hab = H.remove_edge((a, b))
        for x in range(S.n):
            for y in range(S.n):
                if (x, y) in found:
                    continue
                psi = find_homomorphism(Hab, Sj, {a: x, b: y}, budget=budget)
                if psi is not None:
                    found[(x, y)] = (a, b, psi)
    return found


def _rsc_for_star(H: Graph, star: StarSpec, reps, budget) -> RainbowWitness | None:
    S = build_rainbow_star(star)
    per_colour = [_pinned_arc_relation(H, S, j, reps, budget) for j in range(1, star.r)]
    common = set(per_colour[0])
    for rel in per_colour[1:]:
        common &= set(rel)
    masks = [0] * S.n
    for x, y in common:
        masks[x] |= 1 << y
    phi = find_homomorphism(H, Target(S.n, {1: masks}), budget=budget)
    if phi is None:
        return None
    # assemble the constellation and its map into S
    stars, flips = [], []
    for (u, v) in H.edges:
        arcs = tuple(rel[(phi[u], phi[v])][:2] for rel in per_colour)
        stars.append(StarSpec(H, star.r, arcs))
        flips.append(False)
    cspec = ConstellationSpec(H, tuple(stars), tuple(flips))
    _, places, n = _constellation_layout(cspec)
    full = [-1] * n
    for w in range(H.n):
        full[w] = phi[w]
    for i, (u, v) in enumerate(H.edges):
        for j, rel in enumerate(per_colour, start=1):
            _, _, psi = rel[(phi[u], phi[v])]
            for w, pos in places[(i, j)].items():
                full[pos] = psi[w]
    full = tuple(full)
    assert is_homomorphism(build_constellation(cspec), S, full)
    return RainbowWitness(star, cspec, full)


def has_rainbow_sc_property(H: Graph, r: int, dedup: bool = True,
                            max_star_types: int | None = 10_000,
                            budget: Budget | None = None) -> Decision:
    """Whether every rainbow star of H with r-1 colours receives a
    homomorphism from some rainbow constellation.

    Reduction used: for a star S let R contain (x, y) when, for every colour
    j, some arc ab of H admits a homomorphism ``H - ab -> S_j`` with a -> x and
    b -> y. Stars of one constellation share only base vertices, so a
    constellation maps to S exactly when H maps to R (loops allowed). The
    witness per star type is an explicit constellation and a verified map.
    """
    if H.m == 0:
        raise ValueError("H needs an edge")
    if not H.is_connected():
        raise ValueError("H must be connected")
    if r < 2:
        raise ValueError("r must be at least 2")
    budget = budget or Budget()
    types = star_types(H, r, dedup)
    if max_star_types is not None and len(types) > max_star_types:
        return Decision(None, None, budget.nodes, {"star_types": len(types)})
    reps = _arc_orbits(H, automorphisms(H))
    witnesses = []
    try:
        for star in types:
            w = _rsc_for_star(H, star, reps, budget)
            if w is None:
                return Decision(False, star, budget.nodes, {"star_types": len(types)})
            witnesses.append(w)
    except BudgetExceeded:
        return Decision(None, None, budget.nodes, {"star_types": len(types)})
    return Decision(True, witnesses, budget.nodes, {"star_types": len(types)})


def all_constellation_specs(H: Graph, r: int):
    """Every constellation spec with unflipped orientation (flips are covered
    by reversing the arcs)."""
    arcs = _oriented_edges(H)
    for choice in product(product(arcs, repeat=r - 1), repeat=H.m):
        yield ConstellationSpec(H, tuple(StarSpec(H, r, c) for c in choice),
                                (False,) * H.m)


def has_rainbow_sc_property_direct(H: Graph, r: int) -> bool:
    """Literal search over all star specs and all constellation specs.
    Exponential; meant only for cross-checking tiny patterns."""
    specs = [build_constellation(c) for c in all_constellation_specs(H, r)]
    for star in star_types(H, r, dedup=False):
        S = build_rainbow_star(star)
        if not any(find_homomorphism(C, S) is not None for C in specs):
            return False
    return True


# -- report --------------------------------------------------------------------

@dataclass
class GraphReport:
    m2: Fraction
    strictly_2_balanced: bool
    nearly_bipartite: bool
    collapsible: bool | None
    semi_collapsible: bool | None
    rsc: dict[int, bool | None] = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "m2": f"{self.m2.numerator}/{self.m2.denominator}",
            "strictly_2_balanced": self.strictly_2_balanced,
            "nearly_bipartite": self.nearly_bipartite,
            "collapsible": self.collapsible,
            "semi_collapsible": self.semi_collapsible,
            "rsc": {str(r): v for r, v in self.rsc.items()},
            "witnesses": self.witnesses,
        }


def graph_report(H: Graph, rs=(2, 3), budget: Budget | None = None) -> GraphReport:
    """Everything the CLI reports about a pattern graph. Witness maps are
    vertex-index arrays."""
    col = is_collapsible(H, budget)
    semi = is_semi_collapsible(H, budget)
    rsc, wit = {}, {}
    if col.verdict is False:
        e, a = col.witness
        wit["collapsible_failure"] = {"edge": list(e), "endpoint": a}
    if semi.verdict is False:
        wit["semi_collapsible_failure"] = {"edge": list(semi.witness)}
    for r in rs:
        if H.is_connected():
            d = has_rainbow_sc_property(H, r, budget=budget)
            rsc[r] = d.verdict
            if d.verdict:
                wit[f"rsc_{r}"] = [{"star": [list(a) for a in w.star.removed],
                                     "map": list(w.phi)} for w in d.witness]
            elif d.verdict is False:
                wit[f"rsc_{r}_failing_star"] = [list(a) for a in d.witness.removed]
        else:
            rsc[r] = None
    return GraphReport(two_density(H), is_strictly_2_balanced(H)[0],
                       nearly_bipartite(H)[0], col.verdict, semi.verdict, rsc, wit)
