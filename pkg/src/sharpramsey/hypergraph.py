"""Uniform hypergraphs, the three Ramsey families, degree statistics and trimming."""

from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .graph import FormatError, Graph, _data_lines, _ints

Edge = tuple[int, ...]


@dataclass(frozen=True)
class UniformHypergraph:
    """An ``s``-uniform hypergraph on vertices ``0..n-1``.

    ``labels`` optionally names the ground-set element behind each vertex
    (residues for the arithmetic families, host-graph edges for copies).
    ``multiplicity`` is only populated when a multihypergraph is built on
    purpose; colourability never looks at it.
    """

    s: int
    n: int
    edges: tuple[Edge, ...]
    labels: tuple | None = field(default=None, compare=False)
    multiplicity: tuple[int, ...] | None = field(default=None, compare=False)

    def __init__(self, s: int, n: int, edges: Iterable[Iterable[int]] = (),
                 labels: Sequence | None = None,
                 multiplicity: Sequence[int] | None = None):
        if s < 2:
            raise ValueError(f"uniformity must be at least 2, got {s}")
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = set()
        counts: Counter = Counter()
        for e in edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != s or len(set(t)) != s:
                raise ValueError(f"edge {t} does not have {s} distinct vertices")
            if t[0] < 0 or t[-1] >= n:
                raise ValueError(f"edge {t} out of range for n={n}")
            canon.add(t)
            counts[t] += 1
        ordered = tuple(sorted(canon))
        object.__setattr__(self, "s", int(s))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", ordered)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels must name every vertex")
        object.__setattr__(self, "labels", labels)
        if multiplicity is not None:
            multiplicity = tuple(counts[e] for e in ordered)
        object.__setattr__(self, "multiplicity", multiplicity)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def v(self) -> int:
        return self.n

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the indices of the edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def degree(self, T: Iterable[int]) -> int:
        T = set(T)
        return sum(1 for e in self.edges if T.issubset(e))

    def components(self, vertices: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components of ``H[vertices]`` (all vertices by default)."""
        vs = set(range(self.n)) if vertices is None else set(vertices)
        inc = self.incidence
        seen: set[int] = set()
        comps = []
        for s in sorted(vs):
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for i in inc[u]:
                    e = self.edges[i]
                    if all(w in vs for w in e):
                        for w in e:
                            if w not in seen:
                                seen.add(w)
                                stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected_on(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return len(vs) <= 1 or len(self.components(vs)) == 1


# -- families ------------------------------------------------------------------

def pair_index(i: int, j: int, n: int) -> int:
    """Row-major lexicographic index of the edge ``{i, j}`` of ``K_n``."""
    if i > j:
        i, j = j, i
    if i == j or not (0 <= i and j < n):
        raise ValueError(f"({i}, {j}) is not an edge of K_{n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pair_list(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _copy_templates(H: Graph) -> tuple[int, list[tuple[tuple[int, int], ...]]]:
    """Distinct edge sets of H relabelled onto its non-isolated vertex count."""
    core = H.induced(H.non_isolated())
    k = core.n
    seen = set()
    for perm in permutations(range(k)):
        img = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in core.edges))
        seen.add(img)
    return k, sorted(seen)


def build_copies_hypergraph(H: Graph, n: int) -> UniformHypergraph:
    """Hypergraph on the edges of ``K_n`` whose hyperedges are the edge sets of
    copies of ``H``. Vertex ``pair_index(i, j, n)`` is the pair ``{i, j}``."""
    if H.m == 0:
        raise ValueError("pattern graph has no edges")
    if H.m < 2:
        raise ValueError("copies of a single edge give a 1-uniform hypergraph")
    if n < H.n:
        raise ValueError(f"n={n} is smaller than v(H)={H.n}")
    k, templates = _copy_templates(H)
    edges = []
    for subset in combinations(range(n), k):
        for tmpl in templates:
            edges.append([pair_index(subset[u], subset[v], n) for u, v in tmpl])
    return UniformHypergraph(H.m, n * (n - 1) // 2, edges, labels=pair_list(n))


def find_copies(H: Graph, G: Graph) -> list[frozenset[tuple[int, int]]]:
    """Edge sets of all subgraphs of ``G`` isomorphic to ``H`` (isolated
    vertices of ``H`` ignored)."""
    core = H.induced(H.non_isolated())
    if core.n == 0:
        return []
    hadj = core.adjacency()
    gadj = G.adjacency()
    order = _connected_order(core)
    found: set[frozenset] = set()
    phi = [-1] * core.n
    used = [False] * G.n

    def extend(i: int) -> None:
        if i == len(order):
            found.add(frozenset(tuple(sorted((phi[u], phi[v]))) for u, v in core.edges))
            return
        u = order[i]
        placed = [phi[w] for w in hadj[u] if phi[w] >= 0]
        if placed:
            cands = set(gadj[placed[0]])
            for x in placed[1:]:
                cands &= gadj[x]
        else:
            cands = range(G.n)
        for x in sorted(cands):
            if not used[x]:
                phi[u] = x
                used[x] = True
                extend(i + 1)
                used[x] = False
        phi[u] = -1

    extend(0)
    return sorted(found, key=lambda fs: sorted(fs))


def _connected_order(g: Graph) -> list[int]:
    adj = g.adjacency()
    order, seen = [], set()
    for start in sorted(range(g.n), key=lambda v: -len(adj[v])):
        if start in seen:
            continue
        seen.add(start)
        order.append(start)
        frontier = True
        while frontier:
            frontier = False
            best = None
            for v in range(g.n):
                if v in seen:
                    continue
                score = len(adj[v] & seen)
                if score and (best is None or score > best[0]):
                    best = (score, v)
            if best:
                seen.add(best[1])
                order.append(best[1])
                frontier = True
    return order


def copies_in_graph_hypergraph(H: Graph, G: Graph) -> UniformHypergraph:
    """Hypergraph on the edges of ``G`` (indexed as in ``G.edges``) whose
    hyperedges are the copies of ``H`` in ``G``."""
    index = {e: i for i, e in enumerate(G.edges)}
    copies = find_copies(H, G)
    return UniformHypergraph(H.m, G.m, [[index[e] for e in c] for c in copies],
                             labels=list(G.edges))


def build_kap_hypergraph(k: int, N: int) -> UniformHypergraph:
    """Proper ``k``-term arithmetic progressions in ``Z_N`` as vertex sets."""
    if k < 3:
        raise ValueError("k must be at least 3")
    if N <= k:
        raise ValueError("N must exceed k")
    edges = set()
    for a in range(N):
        for d in range(1, N):
            terms = {(a + i * d) % N for i in range(k)}
            if len(terms) == k:
                edges.add(tuple(sorted(terms)))
    return UniformHypergraph(k, N, edges, labels=range(N))


def build_schur_hypergraph(N: int, exclude_zero: bool = False) -> UniformHypergraph:
    """Schur triples ``{x, y, x+y}`` of distinct residues mod ``N``.

    With ``exclude_zero`` the residue 0 is dropped; vertex ``i`` then stands
    for residue ``i + 1`` (see ``labels``).
    """
    if N < 5:
        raise ValueError("N must be at least 5")
    edges = set()
    for x in range(N):
        for y in range(x + 1, N):
            z = (x + y) % N
            if z != x and z != y:
                edges.add(tuple(sorted((x, y, z))))
    if not exclude_zero:
        return UniformHypergraph(3, N, edges, labels=range(N))
    kept = [tuple(v - 1 for v in e) for e in edges if 0 not in e]
    return UniformHypergraph(3, N - 1, kept, labels=range(1, N))


def fano_plane() -> UniformHypergraph:
    from .graph import fano_lines
    return UniformHypergraph(3, 7, fano_lines())


def parse_family_spec(spec: str) -> UniformHypergraph:
    """``schur:N``, ``schur0:N`` (zero removed), ``kap:k,N``, ``copies:<graph>@n``
    (e.g. ``copies:complete:3@10``) or ``fano``."""
    from .graph import parse_graph_spec
    name, _, arg = spec.strip().partition(":")
    try:
        if name == "fano" and not arg:
            return fano_plane()
        if name == "schur":
            return build_schur_hypergraph(int(arg))
        if name == "schur0":
            return build_schur_hypergraph(int(arg), exclude_zero=True)
        if name == "kap":
            k, N = arg.split(",")
            return build_kap_hypergraph(int(k), int(N))
        if name == "copies":
            gspec, _, n = arg.rpartition("@")
            return build_copies_hypergraph(parse_graph_spec(gspec), int(n))
    except ValueError as exc:
        raise ValueError(f"bad family spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown family spec {spec!r}")


# -- statistics ------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeProfile:
    """Maximum and average t-set degrees, ``p_H`` and the non-clustering ratios.

    ``max_degree[t-1]`` is Δ_t; ``avg_degree[t-1]`` averages over occupied
    t-sets. ``p_H`` is a float; ``p_H_power`` is the exact ``v/e`` whose
    ``1/(s-1)``-th power it is. Ratios are compared at 1e-9 relative tolerance.
    """

    s: int
    v: int
    e: int
    max_degree: tuple[int, ...]
    avg_degree: tuple[Fraction, ...]
    p_H: float
    p_H_power: Fraction
    ratio: tuple[float, ...]

    def delta(self, t: int) -> int:
        return self.max_degree[t - 1]

    def as_dict(self) -> dict:
        return {
            "s": self.s, "v": self.v, "e": self.e,
            "delta": list(self.max_degree),
            "avg_degree": [str(a) for a in self.avg_degree],
            "p_H": self.p_H,
            "p_H_power": str(self.p_H_power),
            "ratio": list(self.ratio),
        }


def tset_degrees(H: UniformHypergraph, t: int) -> Counter:
    """Degrees of every occupied t-set, by enumerating t-subsets of edges."""
    deg: Counter = Counter()
    for e in H.edges:
        for T in combinations(e, t):
            deg[T] += 1
    return deg


def p_H(H: UniformHypergraph) -> float:
    if H.e == 0:
        raise ValueError("p_H is undefined for an empty hypergraph")
    return (H.n / H.e) ** (1.0 / (H.s - 1))


def degree_profile(H: UniformHypergraph) -> DegreeProfile:
    if H.e == 0:
        raise ValueError("degree profile needs at least one edge")
    ph = p_H(H)
    maxd, avgd, ratio = [], [], []
    for t in range(1, H.s + 1):
        deg = tset_degrees(H, t)
        d = max(deg.values())
        maxd.append(d)
        avgd.append(Fraction(H.e * math.comb(H.s, t), len(deg)))
        ratio.append(d * H.n / (ph ** (t - 1) * H.e))
    return DegreeProfile(H.s, H.n, H.e, tuple(maxd), tuple(avgd), ph,
                         Fraction(H.n, H.e), tuple(ratio))


def induced(H: UniformHypergraph, W: Iterable[int]) -> tuple[UniformHypergraph, list[int]]:
    """``H[W]`` relabelled order-preservingly; also returns the list mapping new
    vertex ``i`` to its old index."""
    W = sorted(set(int(w) for w in W))
    for w in W:
        if not 0 <= w < H.n:
            raise ValueError(f"vertex {w} out of range for n={H.n}")
    index = {w: i for i, w in enumerate(W)}
    edges = [[index[v] for v in e] for e in H.edges if all(v in index for v in e)]
    labels = [H.labels[w] for w in W] if H.labels is not None else None
    return UniformHypergraph(H.s, len(W), edges, labels=labels), W


def sum_squared_degrees(H: UniformHypergraph, t: int) -> int:
    return sum(d * d for d in tset_degrees(H, t).values())


def trim_by_degree(H: UniformHypergraph, t: int, m: int) -> UniformHypergraph:
    """Greedily delete ``m`` edges, each time one containing a t-set of
    currently largest degree.

    Ties break towards the lexicographically smallest t-set and then the
    smallest edge through it. When ``1 <= m <= e(H)`` the result satisfies
    ``Δ_t <= sum_T deg(T)^2 / m`` and this is asserted.
    """
    if not 1 <= t <= H.s:
        raise ValueError(f"t must lie in [1, {H.s}]")
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return H
    if m >= H.e:
        return UniformHypergraph(H.s, H.n, [], labels=H.labels)
    deg = tset_degrees(H, t)
    bound = Fraction(sum(d * d for d in deg.values()), m)
    through: dict[tuple, list[Edge]] = {}
    for e in H.edges:
        for T in combinations(e, t):
            through.setdefault(T, []).append(e)
    for lst in through.values():
        lst.reverse()  # pop() yields smallest first
    alive = set(H.edges)
    heap = [(-d, T) for T, d in deg.items()]
    heapq.heapify(heap)
    removed = 0
    while removed < m:
        negd, T = heapq.heappop(heap)
        if -negd != deg[T]:
            continue  # stale entry
        lst = through[T]
        while lst and lst[-1] not in alive:
            lst.pop()
        e = lst.pop()
        alive.discard(e)
        removed += 1
        for U in combinations(e, t):
            deg[U] -= 1
            heapq.heappush(heap, (-deg[U], U))
    out = UniformHypergraph(H.s, H.n, alive, labels=H.labels)
    if out.e:
        assert max(tset_degrees(out, t).values()) <= bound
    return out


# -- text format ---------------------------------------------------------------

def parse_hypergraph(text: str) -> UniformHypergraph:
    """Parse the ``s n m`` header followed by ``m`` lines of ``s`` vertices."""
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError("empty hypergraph file", 1)
    lineno, header = lines[0]
    if len(header) != 3:
        raise FormatError("header must be 's n m'", lineno)
    s, n, m = _ints(header, lineno)
    if s < 2:
        raise FormatError("uniformity must be at least 2", lineno)
    if n < 0 or m < 0:
        raise FormatError("negative count in header", lineno)
    if len(lines) - 1 != m:
        raise FormatError(f"header declares {m} edges, found {len(lines) - 1}",
                          lines[-1][0] if len(lines) > 1 else lineno)
    edges = []
    for lineno, toks in lines[1:]:
        if len(toks) != s:
            raise FormatError(f"edge line must list {s} vertices", lineno)
        vs = _ints(toks, lineno)
        if any(not 0 <= v < n for v in vs):
            raise FormatError(f"vertex out of range [0, {n})", lineno)
        if len(set(vs)) != s:
            raise FormatError("repeated vertex in edge", lineno)
        edges.append(vs)
    return UniformHypergraph(s, n, edges)


def format_hypergraph(H: UniformHypergraph) -> str:
    rows = [f"{H.s} {H.n} {H.e}"] + [" ".join(map(str, e)) for e in H.edges]
    return "\n".join(rows) + "\n"


def read_hypergraph(path: str) -> UniformHypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())


def write_hypergraph(H: UniformHypergraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_hypergraph(H))
