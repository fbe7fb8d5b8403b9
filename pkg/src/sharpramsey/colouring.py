"""Exact colourability: proper and list colourings, arrowing, 2-choosability
and the list-Ramsey predicates built on it."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph
from .hypergraph import (UniformHypergraph, build_kap_hypergraph,
                         build_schur_hypergraph, copies_in_graph_hypergraph,
                         induced)
from .search import Budget, BudgetExceeded, Decision


# -- proper (list) colouring -----------------------------------------------------

class _Colourer:
    """DPLL over one connected hypergraph with colour-count propagation.

    ``dom[v]`` is a bitmask of allowed colours (bit c for colour c). For each
    edge we keep per-colour counts of coloured vertices and the number still
    uncoloured; once an edge has s-1 vertices of colour c and one free vertex,
    c is struck from that vertex.
    """

    def __init__(self, H: UniformHypergraph, r: int, doms: list[int], symmetric: bool,
                 budget: Budget):
        self.s = H.s
        self.r = r
        self.edges = H.edges
        self.inc = H.incidence
        self.dom = list(doms)
        self.colour = [0] * H.n
        self.cnt = [[0] * (r + 1) for _ in H.edges]
        self.unc = [H.s] * len(H.edges)
        self.trail: list[tuple] = []
        self.symmetric = symmetric
        self.budget = budget
        self.degree = [len(x) for x in self.inc]
        self.n = H.n

    def _undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            item = trail.pop()
            kind = item[0]
            if kind == 0:  # colour assigned
                self.colour[item[1]] = 0
            elif kind == 1:  # edge counts
                _, e, c = item
                self.cnt[e][c] -= 1
                self.unc[e] += 1
            else:  # domain
                self.dom[item[1]] = item[2]

    def _assign(self, v: int, c: int) -> bool:
        queue = [(v, c)]
        s = self.s
        while queue:
            v, c = queue.pop()
            if self.colour[v]:
                if self.colour[v] != c:
                    return False
                continue
            if not (self.dom[v] >> c) & 1:
                return False
            self.colour[v] = c
            self.trail.append((0, v))
            for e in self.inc[v]:
                cnt = self.cnt[e]
                cnt[c] += 1
                self.unc[e] -= 1
                self.trail.append((1, e, c))
                if cnt[c] == s:
                    return False
                if self.unc[e] == 1 and cnt[c] == s - 1:
                    for w in self.edges[e]:
                        if not self.colour[w]:
                            break
                    d = self.dom[w]
                    if (d >> c) & 1:
                        nd = d & ~(1 << c)
                        self.trail.append((2, w, d))
                        self.dom[w] = nd
                        if not nd:
                            return False
                        if nd & (nd - 1) == 0:
                            queue.append((w, nd.bit_length() - 1))
        return True

    def _pick(self) -> int:
        best, key = -1, None
        for v in range(self.n):
            if not self.colour[v]:
                d = self.dom[v]
                k = (bin(d).count("1"), -self.degree[v], v)
                if key is None or k < key:
                    best, key = v, k
        return best

    def solve(self) -> list[int] | None:
        for v in range(self.n):
            d = self.dom[v]
            if d == 0:
                return None
            if d & (d - 1) == 0 and not self.colour[v]:
                if not self._assign(v, d.bit_length() - 1):
                    return None
        return list(self.colour) if self._search() else None

    def _search(self) -> bool:
        v = self._pick()
        if v < 0:
            return True
        self.budget.tick()
        d = self.dom[v]
        if self.symmetric:
            limit = max(self.colour) + 1
            d &= (1 << (limit + 1)) - 1
        c = 1
        while d >> c:
            if (d >> c) & 1:
                mark = len(self.trail)
                if self._assign(v, c) and self._search():
                    return True
                self._undo(mark)
            c += 1
        return False


def _full_mask(r: int) -> int:
    return ((1 << (r + 1)) - 1) & ~1


def proper_colouring(H: UniformHypergraph, r: int, lists=None,
                     budget: Budget | None = None) -> Decision:
    """A colouring ``0..n-1 -> 1..r`` with no monochromatic edge.

    ``lists[v]`` optionally restricts vertex v (list colouring; colours then
    range over whatever the lists mention and ``r`` only bounds them). The
    verdict is True with the colouring as witness, False if none exists, None
    if ``budget`` ran out.
    """
    if r < 1:
        raise ValueError("r must be positive")
    budget = budget or Budget()
    if lists is not None:
        if len(lists) != H.n:
            raise ValueError("one list per vertex is required")
        top = max([max(L) for L in lists if len(L)] + [r])
        doms = [sum(1 << int(c) for c in L) for L in lists]
        if any(int(c) < 1 for L in lists for c in L):
            raise ValueError("colours are positive integers")
        r_eff, symmetric = top, False
    else:
        doms = [_full_mask(r)] * H.n
        r_eff, symmetric = r, True
    colouring = [0] * H.n
    try:
        for comp in H.components():
            if len(comp) == 1 and not H.incidence[comp[0]]:
                d = doms[comp[0]]
                if d == 0:
                    return Decision(False, None, budget.nodes)
                colouring[comp[0]] = (d & -d).bit_length() - 1
                continue
            sub, back = induced(H, comp)
            solver = _Colourer(sub, r_eff, [doms[v] for v in back], symmetric, budget)
            col = solver.solve()
            if col is None:
                return Decision(False, None, budget.nodes)
            for i, v in enumerate(back):
                colouring[v] = col[i]
    except BudgetExceeded:
        return Decision(None, None, budget.nodes)
    return Decision(True, colouring, budget.nodes)


def list_colouring(H: UniformHypergraph, lists, budget: Budget | None = None) -> Decision:
    return proper_colouring(H, 1, lists=lists, budget=budget)


def is_proper(H: UniformHypergraph, colouring) -> bool:
    return all(len({colouring[v] for v in e}) > 1 for e in H.edges)


def monochromatic_edges(H: UniformHypergraph, colouring) -> int:
    return sum(1 for e in H.edges if len({colouring[v] for v in e}) == 1)


# -- arrowing --------------------------------------------------------------------

def arrow_check(G: Graph, H: Graph, r: int, budget: Budget | None = None) -> Decision:
    """``G -> (H)_r``: every r-colouring of E(G) has a monochromatic copy of H.

    On False the witness maps each edge of G to its colour.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if H.m == 0:
        raise ValueError("H needs an edge")
    budget = budget or Budget()
    if H.m == 1:
        # every edge is a copy of K_2
        return Decision(G.m > 0, None if G.m else {}, 0)
    hyp = copies_in_graph_hypergraph(H, G)
    d = proper_colouring(hyp, r, budget=budget)
    if d.verdict is None:
        return Decision(None, None, d.nodes_expanded)
    if d.verdict:
        return Decision(False, dict(zip(G.edges, d.witness)), d.nodes_expanded,
                        {"copies": hyp.e})
    return Decision(True, None, d.nodes_expanded, {"copies": hyp.e})


# -- 2-choosability -------------------------------------------------------------

def peel_low_degree(H: UniformHypergraph) -> list[int]:
    """Vertices left after repeatedly deleting vertices in at most one edge.

    A vertex in a single edge can always be list-coloured last, so the core is
    2-choosable exactly when H is.
    """
    alive = set(range(H.n))
    live_edges = set(range(H.e))
    deg = [len(x) for x in H.incidence]
    stack = [v for v in alive if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for i in H.incidence[v]:
            if i in live_edges:
                live_edges.discard(i)
                for w in H.edges[i]:
                    if w in alive:
                        deg[w] -= 1
                        if deg[w] == 1:
                            stack.append(w)
    return sorted(alive)


def _bfs_order(H: UniformHypergraph) -> list[int]:
    """Vertex order that closes edges early: repeatedly take the vertex that
    completes the most edges, then the one touching the most placed vertices."""
    placed: set[int] = set()
    order = []
    while len(order) < H.n:
        best, key = None, None
        for v in range(H.n):
            if v in placed:
                continue
            closes = touches = 0
            for i in H.incidence[v]:
                missing = sum(1 for w in H.edges[i] if w not in placed)
                if missing == 1:
                    closes += 1
                if missing < H.s:
                    touches += 1
            k = (-closes, -touches, -len(H.incidence[v]), v)
            if key is None or k < key:
                best, key = v, k
        placed.add(best)
        order.append(best)
    return order


class _ChoosabilitySearch:
    """Search for a list assignment admitting no proper list colouring.

    Choice vectors sigma in {0,1}^n pick one colour per vertex; a set of
    them is an int with 2^n bits. ``bad`` collects the sigma that make some
    edge monochromatic. Lists are introduced vertex by vertex in
    restricted-growth form (new colours appear in increasing order), which
    enumerates every assignment up to renaming colours.
    """

    def __init__(self, H: UniformHypergraph, universe: int, budget: Budget):
        self.H = H
        self.n = H.n
        self.universe = universe
        self.budget = budget
        self.full = (1 << (1 << H.n)) - 1
        self._cube_cache: dict[tuple, int] = {}
        self._mono_cache: dict[tuple, int] = {}
        # bit patterns: sigma with bit v == 1
        N = 1 << H.n
        self.ones = []
        for v in range(H.n):
            block = ((1 << (1 << v)) - 1) << (1 << v)  # 2^v ones after 2^v zeros
            period = 1 << (v + 1)
            m = 0
            for start in range(0, N, period):
                m |= block << start
            self.ones.append(m)
        # edges grouped by the vertex completing them
        self.closing: list[list[tuple[int, ...]]] = [[] for _ in range(H.n)]
        for e in H.edges:
            self.closing[max(e)].append(e)

    def cube(self, fixed: tuple[tuple[int, int], ...]) -> int:
        """All sigma with sigma_v = b for each (v, b) in ``fixed``."""
        m = self._cube_cache.get(fixed)
        if m is None:
            m = self.full
            for v, b in fixed:
                m &= self.ones[v] if b else (self.full ^ self.ones[v])
            self._cube_cache[fixed] = m
        return m

    def _mono(self, known, lists) -> int:
        """Sigma making every vertex of ``known`` pick one common colour."""
        key = tuple((v, lists[v]) for v in known)
        m = self._mono_cache.get(key)
        if m is not None:
            return m
        m = 0
        for c in lists[known[0]]:
            fixed = []
            for v in known:
                L = lists[v]
                if L[0] == c:
                    fixed.append((v, 0))
                elif L[1] == c:
                    fixed.append((v, 1))
                else:
                    break
            else:
                m |= self.cube(tuple(fixed))
        self._mono_cache[key] = m
        return m

    def edge_mask(self, e, lists) -> int:
        return self._mono(e, lists)

    def potential(self, e, lists, depth) -> int:
        """Sigma that could still make e monochromatic once all lists exist."""
        known = tuple(v for v in e if v <= depth)
        if len(known) < 2:
            return self.full
        return self._mono(known, lists)

    def run(self) -> list[tuple[int, int]] | None:
        self.lists: list[tuple[int, int] | None] = [None] * self.n
        if self._dfs(0, 0, 0):
            return list(self.lists)
        return None

    def _dfs(self, v: int, used: int, bad: int) -> bool:
        if v == self.n:
            return False
        H = self.H
        for a in range(1, min(used + 1, self.universe) + 1):
            for b in range(a + 1, min(used + 2, self.universe) + 1):
                if b == used + 2 and a != used + 1:
                    continue
                self.budget.tick()
                self.lists[v] = (a, b)
                nb = bad
                for e in self.closing[v]:
                    nb |= self.edge_mask(e, self.lists)
                if nb == self.full:
                    for w in range(v + 1, self.n):
                        self.lists[w] = (1, 2)
                    return True
                if self._can_fill(v, nb) and self._dfs(v + 1, max(used, b), nb):
                    return True
        self.lists[v] = None
        return False

    def _can_fill(self, v: int, bad: int) -> bool:
        """Whether the edges still to be closed could make every sigma bad.

        Two tests: their possible masks must cover the rest of the cube, and
        their sizes must add up. An edge whose known part admits k common
        colours ends up with at most k * 2^(n-s) choice vectors.
        """
        cover = bad
        need = (1 << self.n) - bad.bit_count()
        total = 0
        n, s = self.n, self.H.s
        lists = self.lists
        for w in range(v + 1, n):
            for e in self.closing[w]:
                known = tuple(x for x in e if x <= v)
                if len(known) < 2:
                    cover = self.full
                    total += 2 << (n - s)
                    continue
                pot = self._mono(known, lists)
                fresh = pot & ~bad
                cover |= fresh
                cap = (pot.bit_count() >> (n - len(known))) << (n - s)
                total += min(cap, fresh.bit_count())
        return cover == self.full and total >= need


def _identical_lists(n: int) -> list[tuple[int, int]]:
    return [(1, 2)] * n


def is_2_choosable(H: UniformHypergraph, r: int = 4, max_vertices: int = 16,
                   budget: Budget | None = None) -> Decision:
    """Whether H is properly colourable from every assignment of 2-element
    lists drawn from ``1..r``.

    On False the witness is a bad list assignment (a list of pairs, one per
    vertex). Components whose peeled core exceeds ``max_vertices`` make the
    answer inconclusive.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    budget = budget or Budget()
    core = peel_low_degree(H)
    if not core:
        return Decision(True, None, budget.nodes)
    sub, back = induced(H, core)
    try:
        two = proper_colouring(sub, 2, budget=budget)
        if two.verdict is None:
            return Decision(None, None, budget.nodes)
        if not two.verdict:
            return Decision(False, _identical_lists(H.n), budget.nodes, {"identical": True})
        inconclusive = False
        for comp in sub.components():
            if len(comp) < 2:
                continue
            csub, cback = induced(sub, comp)
            if csub.n > max_vertices:
                inconclusive = True
                continue
            order = _bfs_order(csub)
            rel, _ = _relabel(csub, order)
            found = _ChoosabilitySearch(rel, r, budget).run()
            if found is not None:
                lists = _identical_lists(H.n)
                for i, v in enumerate(order):
                    lists[back[cback[v]]] = found[i]
                return Decision(False, lists, budget.nodes)
    except BudgetExceeded:
        return Decision(None, None, budget.nodes)
    if inconclusive:
        return Decision(None, None, budget.nodes, {"reason": "vertex cap"})
    return Decision(True, None, budget.nodes)


def _relabel(H: UniformHypergraph, order: list[int]) -> tuple[UniformHypergraph, dict]:
    pos = {v: i for i, v in enumerate(order)}
    return UniformHypergraph(H.s, H.n, [[pos[v] for v in e] for e in H.edges]), pos


def is_list_colourable(H: UniformHypergraph, lists) -> bool:
    d = list_colouring(H, lists)
    return bool(d.verdict)


@dataclass
class NonChoosableSet:
    vertices: tuple[int, ...]
    minimal: bool
    lists: list | None = None


def connected_subsets(H: UniformHypergraph, k: int, within=None) -> list[frozenset[int]]:
    """Vertex sets W with 2 <= |W| <= k and H[W] connected, by growing unions
    of intersecting edges."""
    allowed = set(range(H.n)) if within is None else set(within)
    edges = [frozenset(e) for e in H.edges if allowed.issuperset(e)]
    by_vertex: dict[int, list[frozenset]] = {}
    for e in edges:
        for v in e:
            by_vertex.setdefault(v, []).append(e)
    seen: set[frozenset] = set()
    frontier = [e for e in edges if len(e) <= k]
    seen.update(frontier)
    while frontier:
        nxt = []
        for W in frontier:
            for v in W:
                for e in by_vertex[v]:
                    if e <= W:
                        continue
                    U = W | e
                    if len(U) <= k and U not in seen:
                        seen.add(U)
                        nxt.append(U)
        frontier = nxt
    return sorted(seen, key=lambda W: (len(W), sorted(W)))


def find_non_choosable_subsets(H: UniformHypergraph, k: int, r: int = 4,
                               within=None, budget: Budget | None = None,
                               max_vertices: int = 16,
                               stop_at_first: bool = False) -> list[NonChoosableSet]:
    """Every connected W with ``|W| <= k`` and H[W] not 2-choosable from
    ``1..r``, smallest first; ``minimal`` marks sets none of whose one-vertex
    deletions is non-choosable.

    Raises BudgetExceeded when a subset check is inconclusive. With
    ``stop_at_first`` the search ends at the first (necessarily minimal) set.
    """
    budget = budget or Budget()
    found: list[NonChoosableSet] = []
    masks: list[int] = []
    for W in connected_subsets(H, k, within):
        wmask = sum(1 << v for v in W)
        if any(m & wmask == m for m in masks):
            found.append(NonChoosableSet(tuple(sorted(W)), False))
            masks.append(wmask)
            continue
        sub, back = induced(H, W)
        # a vertex in at most one edge reduces to W - v, which is choosable here
        if min(len(x) for x in sub.incidence) <= 1:
            continue
        d = is_2_choosable(sub, r, max_vertices=max_vertices, budget=budget)
        if d.verdict is None:
            raise BudgetExceeded("subset check inconclusive")
        if not d.verdict:
            found.append(NonChoosableSet(tuple(sorted(W)), True, d.witness))
            masks.append(wmask)
            if stop_at_first:
                break
    return found


def is_2_choosable_wrt(G: Graph, H: Graph, universe: int = 4,
                       budget: Budget | None = None, max_vertices: int = 16) -> Decision:
    """Whether E(G) can be coloured from any 2-lists without a monochromatic H.

    Lists are drawn from ``1..universe`` up to colour renaming.
    """
    if H.m < 2:
        raise ValueError("H needs at least two edges")
    hyp = copies_in_graph_hypergraph(H, G)
    d = is_2_choosable(hyp, universe, max_vertices=max_vertices, budget=budget)
    if d.verdict is False:
        d.witness = dict(zip(G.edges, d.witness))
    return d


def _residue_family(hyp: UniformHypergraph, Y, N: int, universe: int,
                    budget: Budget | None, max_vertices: int) -> Decision:
    Y = sorted({int(y) % N for y in Y})
    if not Y:
        return Decision(False, None, 0)
    sub, back = induced(hyp, Y)
    d = is_2_choosable(sub, universe, max_vertices=max_vertices, budget=budget)
    if d.verdict is None:
        return d
    if d.verdict:
        return Decision(False, None, d.nodes_expanded)
    return Decision(True, {y: lists for y, lists in zip(back, d.witness)}, d.nodes_expanded)


def is_list_schur(Y, N: int, universe: int = 4, budget: Budget | None = None,
                  max_vertices: int = 16) -> Decision:
    """Whether some 2-list assignment on Y forces a monochromatic Schur
    triple in every list colouring. Witness: ``{residue: list}``."""
    return _residue_family(build_schur_hypergraph(N), Y, N, universe, budget, max_vertices)


def is_list_vdw(Y, N: int, k: int, universe: int = 4, budget: Budget | None = None,
                max_vertices: int = 16) -> Decision:
    """As ``is_list_schur`` for k-term arithmetic progressions."""
    return _residue_family(build_kap_hypergraph(k, N), Y, N, universe, budget, max_vertices)


# -- robust non-colourability ---------------------------------------------------

@dataclass
class MinMonochromatic:
    value: int
    exact: bool
    colouring: list[int]


def min_monochromatic_edges(H: UniformHypergraph, r: int, max_vertices: int = 40,
                            budget: Budget | None = None) -> MinMonochromatic:
    """Fewest monochromatic edges over all r-colourings.

    Branch and bound with vertex 0 fixed to colour 1 (and in general new
    colours introduced in order). Above ``max_vertices`` or on budget
    exhaustion the best colouring found is returned with ``exact=False``.
    """
    if r < 1:
        raise ValueError("r must be positive")
    n = H.n
    if n == 0 or H.e == 0:
        return MinMonochromatic(0, True, [1] * n)
    order = _bfs_order(H)
    pos = {v: i for i, v in enumerate(order)}
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in H.edges:
        closing[max(pos[v] for v in e)].append(e)
    # greedy start
    col = [0] * n
    for v in order:
        best_c, best_k = 1, None
        for c in range(1, r + 1):
            col[v] = c
            k = sum(1 for e in H.incidence[v]
                    if all(col[w] == c for w in H.edges[e]))
            if best_k is None or k < best_k:
                best_c, best_k = c, k
        col[v] = best_c
    best = [monochromatic_edges(H, col), list(col)]
    if n > max_vertices:
        return MinMonochromatic(best[0], False, best[1])
    budget = budget or Budget()
    col = [0] * n

    def dfs(i: int, used: int, count: int) -> None:
        if count >= best[0]:
            return
        if i == n:
            best[0], best[1] = count, list(col)
            return
        budget.tick()
        v = order[i]
        for c in range(1, min(used + 1, r) + 1):
            col[v] = c
            add = sum(1 for e in closing[i] if all(col[w] == c for w in e))
            dfs(i + 1, max(used, c), count + add)
        col[v] = 0

    try:
        dfs(0, 0, 0)
    except BudgetExceeded:
        return MinMonochromatic(best[0], False, best[1])
    return MinMonochromatic(best[0], True, best[1])
