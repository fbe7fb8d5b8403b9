"""Colour-preserving graph homomorphisms: search, enumeration and exact counting.

Targets are stored as per-colour adjacency bitmasks (Python ints), so the
domain of a pattern vertex is a single integer and forward checking is a
handful of ``&`` operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

import numpy as np

from .graph import Graph
from .search import Budget


@dataclass(frozen=True)
class ColouredPattern:
    """Graph whose edges carry positive integer colours.

    ``distinguished`` records vertices with a role (a star's centre pair, a
    constellation's base vertices); it does not affect homomorphisms.
    """

    n: int
    coloured_edges: tuple[tuple[int, int, int], ...]
    distinguished: tuple[int, ...] = ()

    def __init__(self, n: int, coloured_edges: Iterable[tuple[int, int, int]] = (),
                 distinguished: Iterable[int] = ()):
        seen: dict[tuple[int, int], int] = {}
        for u, v, c in coloured_edges:
            u, v, c = int(u), int(v), int(c)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if c < 1:
                raise ValueError("colours are positive integers")
            key = (min(u, v), max(u, v))
            if seen.get(key, c) != c:
                raise ValueError(f"edge {key} given two colours")
            seen[key] = c
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "coloured_edges",
                           tuple(sorted((u, v, c) for (u, v), c in seen.items())))
        object.__setattr__(self, "distinguished", tuple(int(d) for d in distinguished))

    @classmethod
    def from_graph(cls, g: Graph, colour: int = 1) -> "ColouredPattern":
        return cls(g.n, [(u, v, colour) for u, v in g.edges])

    @property
    def colours(self) -> set[int]:
        return {c for _, _, c in self.coloured_edges}

    def underlying(self) -> Graph:
        return Graph(self.n, [(u, v) for u, v, _ in self.coloured_edges])

    def colour_class(self, c: int) -> Graph:
        return Graph(self.n, [(u, v) for u, v, k in self.coloured_edges if k == c])

    def masks(self) -> dict[int, list[int]]:
        """Per colour, the neighbourhood bitmask of every vertex."""
        out: dict[int, list[int]] = {}
        for u, v, c in self.coloured_edges:
            m = out.setdefault(c, [0] * self.n)
            m[u] |= 1 << v
            m[v] |= 1 << u
        return out


def as_pattern(x) -> ColouredPattern:
    return x if isinstance(x, ColouredPattern) else ColouredPattern.from_graph(x)


class Target:
    """A homomorphism target given directly by per-colour bitmasks.

    Unlike ColouredPattern this may contain loops (bit ``x`` set in
    ``masks[c][x]``), which the rainbow criterion needs.
    """

    def __init__(self, n: int, masks: Mapping[int, list[int]]):
        self.n = n
        self.masks = {c: list(m) for c, m in masks.items()}

    @classmethod
    def of(cls, G) -> "Target":
        if isinstance(G, Target):
            return G
        G = as_pattern(G)
        return cls(G.n, G.masks())


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Search:
    def __init__(self, F, G, pins, injective, budget):
        F = as_pattern(F)
        T = Target.of(G)
        self.nF = F.n
        self.T = T
        self.injective = injective
        self.budget = budget or Budget()
        full = (1 << T.n) - 1
        self.nbrs: list[list[tuple[int, int]]] = [[] for _ in range(F.n)]
        for u, v, c in F.coloured_edges:
            self.nbrs[u].append((v, c))
            self.nbrs[v].append((u, c))
        dom = [full] * F.n
        empty_target = [0] * T.n
        for u in range(F.n):
            for _, c in self.nbrs[u]:
                m = T.masks.get(c, empty_target)
                support = 0
                for x in range(T.n):
                    if m[x]:
                        support |= 1 << x
                dom[u] &= support
        self.dom0 = dom
        self.pins = dict(pins or {})
        # static degree order breaks ties after domain size
        self.deg = [len(a) for a in self.nbrs]

    def _assign(self, dom, phi, u, x) -> list[int] | None:
        dom = list(dom)
        dom[u] = 1 << x
        phi[u] = x
        for w, c in self.nbrs[u]:
            if phi[w] < 0:
                nd = dom[w] & self.T.masks[c][x] if c in self.T.masks else 0
                if not nd:
                    return None
                dom[w] = nd
            elif c not in self.T.masks or not (self.T.masks[c][x] >> phi[w]) & 1:
                return None
        if self.injective:
            bit = ~(1 << x)
            for w in range(self.nF):
                if phi[w] < 0:
                    dom[w] &= bit
                    if not dom[w]:
                        return None
        return dom

    def start(self):
        phi = [-1] * self.nF
        dom = self.dom0
        for u, x in sorted(self.pins.items()):
            if not 0 <= u < self.nF or not 0 <= x < self.T.n:
                raise ValueError(f"pin {u}->{x} out of range")
            if not (dom[u] >> x) & 1:
                return None, phi
            if phi[u] >= 0 and phi[u] != x:
                return None, phi
            dom = self._assign(dom, phi, u, x)
            if dom is None:
                return None, phi
        return dom, phi

    def _pick(self, dom, phi) -> int:
        best, key = -1, None
        for u in range(self.nF):
            if phi[u] < 0:
                k = (_popcount(dom[u]), -self.deg[u], u)
                if key is None or k < key:
                    best, key = u, k
        return best

    def run(self, dom, phi, depth_left) -> Iterator[list[int]]:
        if depth_left == 0:
            yield list(phi)
            return
        u = self._pick(dom, phi)
        for x in _bits(dom[u]):
            self.budget.tick()
            nd = self._assign(dom, phi, u, x)
            if nd is not None:
                yield from self.run(nd, phi, depth_left - 1)
            phi[u] = -1
        phi[u] = -1


def iter_homomorphisms(F, G, pins: Mapping[int, int] | None = None,
                       injective: bool = False,
                       budget: Budget | None = None) -> Iterator[tuple[int, ...]]:
    """All colour-preserving homomorphisms ``F -> G`` extending ``pins``,
    as tuples ``phi[u]``, in a deterministic order.

    ``G`` may be a Graph, ColouredPattern or Target. Uncoloured graphs are
    read as all edges having colour 1.
    """
    s = _Search(F, G, pins, injective, budget)
    dom, phi = s.start()
    if dom is None:
        return
    for sol in s.run(dom, phi, sum(1 for x in phi if x < 0)):
        yield tuple(sol)


def find_homomorphism(F, G, pins: Mapping[int, int] | None = None,
                      injective: bool = False,
                      budget: Budget | None = None) -> tuple[int, ...] | None:
    """The first homomorphism in search order, or None if there is none.

    Raises BudgetExceeded if ``budget`` runs out first.
    """
    for phi in iter_homomorphisms(F, G, pins, injective, budget):
        return phi
    return None


def is_homomorphism(F, G, phi: Iterable[int]) -> bool:
    F = as_pattern(F)
    T = Target.of(G)
    phi = list(phi)
    if len(phi) != F.n or any(not 0 <= x < T.n for x in phi):
        return False
    for u, v, c in F.coloured_edges:
        if c not in T.masks or not (T.masks[c][phi[u]] >> phi[v]) & 1:
            return False
    return True


def automorphisms(F) -> list[tuple[int, ...]]:
    """Colour-preserving automorphisms of a small pattern."""
    return list(iter_homomorphisms(F, F, injective=True))


def are_isomorphic(F, G) -> bool:
    F, G = as_pattern(F), as_pattern(G)
    if F.n != G.n or len(F.coloured_edges) != len(G.coloured_edges):
        return False
    if sorted(c for *_, c in F.coloured_edges) != sorted(c for *_, c in G.coloured_edges):
        return False
    return find_homomorphism(F, G, injective=True) is not None


def blowup(F: Graph, k: int) -> Graph:
    """Replace each vertex ``i`` by the class ``{i*k, ..., i*k+k-1}``."""
    if k < 1:
        raise ValueError("k must be positive")
    edges = [(u * k + a, v * k + b) for u, v in F.edges for a in range(k) for b in range(k)]
    return Graph(F.n * k, edges)


# -- counting ------------------------------------------------------------------

def _surjections(k: int, j: int) -> int:
    """Number of maps from a k-set onto a j-set."""
    return sum((-1) ** i * comb(j, i) * (j - i) ** k for i in range(j + 1))


def _twin_classes(F: ColouredPattern) -> list[list[int]]:
    keys: dict[frozenset, list[int]] = {}
    nb: list[set] = [set() for _ in range(F.n)]
    for u, v, c in F.coloured_edges:
        nb[u].add((v, c))
        nb[v].add((u, c))
    for u in range(F.n):
        keys.setdefault(frozenset(nb[u]), []).append(u)
    return list(keys.values())


def hom_count(F, G) -> int:
    """Exact number of colour-preserving homomorphisms ``F -> G``.

    Twin vertices of ``F`` (same coloured neighbourhood, hence independent)
    are merged: a class of size k maps onto some vertex set S with |S| <= k in
    ``surj(k, |S|)`` ways, and class-to-class edges need all of S x T present.
    The remaining sum is a tensor contraction done by numpy per component.
    """
    F, G = as_pattern(F), as_pattern(G)
    if F.n == 0:
        return 1
    if G.n == 0:
        return 0
    classes = _twin_classes(F)
    where = {}
    for i, cl in enumerate(classes):
        for u in cl:
            where[u] = i
    # class graph
    cedges: dict[tuple[int, int], int] = {}
    for u, v, c in F.coloured_edges:
        a, b = sorted((where[u], where[v]))
        cedges[(a, b)] = c
    gm = G.masks()
    # domains per class size
    domains: dict[int, tuple[list[int], np.ndarray]] = {}
    big = G.n ** F.n >= 2 ** 62
    dtype = object if big else np.int64

    def domain(k: int):
        if k not in domains:
            sets, weights = [], []
            for j in range(1, min(k, G.n) + 1):
                w = _surjections(k, j)
                for S in combinations(range(G.n), j):
                    sets.append(sum(1 << x for x in S))
                    weights.append(w)
            domains[k] = (sets, np.array(weights, dtype=dtype))
        return domains[k]

    def edge_matrix(ka: int, kb: int, c: int) -> np.ndarray:
        sa, _ = domain(ka)
        sb, _ = domain(kb)
        m = gm.get(c, [0] * G.n)
        # common[S] = vertices adjacent (colour c) to every vertex of S
        def common(S: int) -> int:
            out = (1 << G.n) - 1
            for x in _bits(S):
                out &= m[x]
            return out
        ca = [common(S) for S in sa]
        M = np.zeros((len(sa), len(sb)), dtype=dtype)
        for i, cm in enumerate(ca):
            for j, T in enumerate(sb):
                if T & ~cm == 0:
                    M[i, j] = 1
        return M

    # components of the class graph
    parent = list(range(len(classes)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in cedges:
        parent[find(a)] = find(b)
    comps: dict[int, list[int]] = {}
    for i in range(len(classes)):
        comps.setdefault(find(i), []).append(i)

    total = 1
    for members in comps.values():
        idx = {c: i for i, c in enumerate(members)}
        operands: list = []
        for c in members:
            operands += [domain(len(classes[c]))[1], [idx[c]]]
        for (a, b), col in cedges.items():
            if a in idx:
                operands += [edge_matrix(len(classes[a]), len(classes[b]), col),
                             [idx[a], idx[b]]]
        if len(members) > 52:
            raise ValueError("pattern component too large for tensor contraction")
        val = np.einsum(*operands, [], optimize="greedy") if dtype is not object \
            else np.einsum(*operands, [])
        total *= int(val)
        if total == 0:
            return 0
    return total


def hom_density(F, G) -> Fraction:
    """``hom(F, G) / v(G)^{v(F)}`` as an exact fraction."""
    F, G = as_pattern(F), as_pattern(G)
    return Fraction(hom_count(F, G), G.n ** F.n)
