"""Brute-force reference implementations used as test oracles.

Everything here is deliberately naive: plain loops over all maps, subsets or
assignments, sharing no code with the package beyond the input types.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations, product


def edge_tuples(G):
    return [tuple(e) for e in G.edges]


def induced_edge_count(edges, S):
    S = set(S)
    return sum(1 for u, v in edges if u in S and v in S)


def two_density(n, edges):
    best = Fraction(1, 2)
    for k in range(3, n + 1):
        for S in combinations(range(n), k):
            best = max(best, Fraction(induced_edge_count(edges, S) - 1, k - 2))
    return best


def max_density(n, edges):
    best = Fraction(0)
    for k in range(1, n + 1):
        for S in combinations(range(n), k):
            best = max(best, Fraction(induced_edge_count(edges, S), k))
    return best


def coloured_edges(P):
    """(u, v, c) triples of a ColouredPattern or a Graph (colour 1)."""
    if hasattr(P, "coloured_edges"):
        return list(P.coloured_edges)
    return [(u, v, 1) for u, v in P.edges]


def hom_count(F, G):
    fe = coloured_edges(F)
    ge = set()
    for u, v, c in coloured_edges(G):
        ge.add((u, v, c))
        ge.add((v, u, c))
    return sum(1 for phi in product(range(G.n), repeat=F.n)
               if all((phi[u], phi[v], c) in ge for u, v, c in fe))


def has_hom(F, G):
    return hom_count(F, G) > 0


def is_subgraph(F, G):
    """F isomorphic to a subgraph of G (injective edge-preserving map)."""
    ge = set(G.edges) | {(v, u) for u, v in G.edges}
    return any(all((phi[u], phi[v]) in ge for u, v in F.edges)
               for phi in permutations(range(G.n), F.n))


def colourable(n, edges, r):
    return any(all(len({c[v] for v in e}) > 1 for e in edges)
               for c in product(range(r), repeat=n))


def min_mono(n, edges, r):
    return min(sum(1 for e in edges if len({c[v] for v in e}) == 1)
               for c in product(range(r), repeat=n))


def list_colourable(edges, lists):
    return any(all(len({c[v] for v in e}) > 1 for e in edges)
               for c in product(*lists))


def two_choosable(n, edges, universe):
    proper = {c for c in product(range(1, universe + 1), repeat=n)
              if all(len({c[v] for v in e}) > 1 for e in edges)}
    pairs = list(combinations(range(1, universe + 1), 2))
    return all(any(c in proper for c in product(*L)) for L in product(pairs, repeat=n))


def connected_vertex_sets(n, edges, k):
    """W with 2 <= |W| <= k whose induced edges cover W and connect it."""
    out = []
    for size in range(2, k + 1):
        for W in combinations(range(n), size):
            inner = [e for e in edges if set(e) <= set(W)]
            if not inner or set().union(*map(set, inner)) != set(W):
                continue
            comp = set(inner[0])
            grew = True
            while grew:
                grew = False
                for e in inner:
                    if comp & set(e) and not set(e) <= comp:
                        comp |= set(e)
                        grew = True
            if comp == set(W):
                out.append(W)
    return out


def relabel(edges, W):
    pos = {v: i for i, v in enumerate(W)}
    return [tuple(pos[v] for v in e) for e in edges if set(e) <= set(W)]


def arrows(G, H, r):
    """Every r-colouring of E(G) has a monochromatic copy of H."""
    gedges = list(G.edges)
    index = {e: i for i, e in enumerate(gedges)}
    copies = set()
    for phi in permutations(range(G.n), H.n):
        img = []
        for u, v in H.edges:
            a, b = sorted((phi[u], phi[v]))
            if (a, b) not in index:
                break
            img.append(index[(a, b)])
        else:
            copies.add(frozenset(img))
    return all(any(len({col[i] for i in c}) == 1 for c in copies)
               for col in product(range(r), repeat=len(gedges)))


def copies_in_kn(H, n):
    """Edge sets (as sets of sorted pairs) of copies of H in K_n."""
    out = set()
    for phi in permutations(range(n), H.n):
        out.add(frozenset(tuple(sorted((phi[u], phi[v]))) for u, v in H.edges))
    return out


def schur_triples(N, exclude_zero=False):
    out = set()
    for x, y, z in product(range(N), repeat=3):
        if len({x, y, z}) == 3 and (x + y) % N == z:
            if exclude_zero and 0 in (x, y, z):
                continue
            out.add(frozenset((x, y, z)))
    return out


def k_aps(k, N):
    out = set()
    for a, d in product(range(N), range(1, N)):
        terms = frozenset((a + i * d) % N for i in range(k))
        if len(terms) == k:
            out.add(terms)
    return out


def max_tset_degree(edges, t, n):
    """Δ_t by scanning every vertex t-set (the package never does this)."""
    best = 0
    for T in combinations(range(n), t):
        best = max(best, sum(1 for e in edges if set(T) <= set(e)))
    return best


def clot_nuclei(s, edges, W):
    """Nuclei A in W (|A| = 2s-3): each (s-1)-subset has two completions in W - A."""
    eset = {frozenset(e) for e in edges}
    W = sorted(W)
    out = []
    for A in combinations(W, 2 * s - 3):
        ok = True
        for sub in combinations(A, s - 1):
            comps = [v for v in W if v not in A and frozenset(sub + (v,)) in eset]
            if len(comps) < 2:
                ok = False
                break
        if ok:
            out.append(A)
    return out


def stars(edges, k, n):
    """(centre, frozenset of k edges) pairs meeting pairwise exactly in the centre."""
    out = []
    for v in range(n):
        through = [e for e in edges if v in e]
        for combo in combinations(through, k):
            if all(set(a) & set(b) == {v} for a, b in combinations(combo, 2)):
                out.append((v, combo))
    return out


def star_support(v, combo):
    s = {v}
    for e in combo:
        s |= set(e)
    return s


def constellations(edges, k, n):
    st = stars(edges, k, n)
    by_centre = {}
    for v, combo in st:
        by_centre.setdefault(v, []).append(star_support(v, combo))
    total = 0
    for base in edges:
        for choice in product(*[by_centre.get(v, []) for v in base]):
            if all(not (a & b) for a, b in combinations(choice, 2)):
                total += 1
    return total


def rainbow_counts(edges, r, col, n):
    """Per i, the i-rainbow (r-1)-stars and constellations under col (0 = none)."""
    def is_i_rainbow(v, combo, i):
        others = [j for j in range(1, r + 1) if j != i]
        for assign in permutations(others):
            if all({col[w] for w in e if w != v} == {j} for e, j in zip(combo, assign)):
                return True
        return False

    st = stars(edges, r - 1, n)
    star_counts, cons_counts = [], []
    for i in range(1, r + 1):
        good = [(v, c) for v, c in st if is_i_rainbow(v, c, i)]
        star_counts.append(len(good))
        by_centre = {}
        for v, c in good:
            by_centre.setdefault(v, []).append(star_support(v, c))
        total = 0
        for base in edges:
            for choice in product(*[by_centre.get(v, []) for v in base]):
                if all(not (a & b) for a, b in combinations(choice, 2)):
                    total += 1
        cons_counts.append(total)
    return star_counts, cons_counts


def prestar_count(Y, N):
    t = len(Y)
    total = 0
    for a in range(N):
        for xs in product(*Y):
            for ys in product(*Y):
                if all(a % N in {(x + y) % N, (x - y) % N, (y - x) % N}
                       for x, y in zip(xs, ys)):
                    total += 1
    return total


def prestar_centres(Y, N):
    out = [0] * N
    for a in range(N):
        for xs in product(*Y):
            for ys in product(*Y):
                if all(a in {(x + y) % N, (x - y) % N, (y - x) % N} for x, y in zip(xs, ys)):
                    out[a] += 1
    return out


def preconstellation_count(Y, N):
    P = prestar_centres(Y, N)
    return sum(P[a] * P[b] * P[c] for a, b, c in product(range(N), repeat=3)
               if (a + b) % N == c or (a + c) % N == b or (b + c) % N == a)


def janson_terms(sets, p):
    sets = [frozenset(B) for B in sets]
    mu = sum(p ** len(B) for B in sets)
    var = 0.0
    for A in sets:
        for B in sets:
            if A & B:
                var += p ** len(A | B)
    return mu, var


def janson_bound(sets, p, t):
    mu, var = janson_terms(sets, p)
    return 1.0 if t == 0 else math.exp(-t * t / (2 * var))
