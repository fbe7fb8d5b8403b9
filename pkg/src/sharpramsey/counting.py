"""Exact counts of stars, constellations and their rainbow versions, and of
Schur prestars and preconstellations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .hypergraph import UniformHypergraph


# -- stars and constellations ----------------------------------------------------

def stars_at(H: UniformHypergraph, v: int, k: int) -> list[tuple[tuple[int, ...], ...]]:
    """k-stars centred at v as sorted tuples of edges.

    A 1-star is a single edge with a distinguished centre, so every edge
    through v counts once here.
    """
    through = [H.edges[i] for i in H.incidence[v]]
    if k == 1:
        return [(e,) for e in through]
    out = []

    def grow(start: int, chosen: list, used: set) -> None:
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        for i in range(start, len(through)):
            e = through[i]
            rest = set(e) - {v}
            if rest & used:
                continue
            chosen.append(e)
            grow(i + 1, chosen, used | rest)
            chosen.pop()

    grow(0, [], set())
    return out


def count_stars(H: UniformHypergraph, r: int) -> int:
    """Number of (r-1)-stars; for r = 2 the (edge, centre) pairs, i.e. s*e(H)."""
    if r < 2:
        raise ValueError("r must be at least 2")
    return sum(len(stars_at(H, v, r - 1)) for v in range(H.n))


def _support(star, centre) -> frozenset[int]:
    out = {centre}
    for e in star:
        out.update(e)
    return frozenset(out)


def _count_disjoint(choices: list[list[frozenset[int]]]) -> int:
    """Tuples with one support per slot, pairwise disjoint."""
    if any(not c for c in choices):
        return 0
    order = sorted(range(len(choices)), key=lambda i: len(choices[i]))
    choices = [choices[i] for i in order]

    def rec(i: int, used: frozenset[int]) -> int:
        if i == len(choices):
            return 1
        return sum(rec(i + 1, used | S) for S in choices[i] if not (S & used))

    return rec(0, frozenset())


def count_constellations(H: UniformHypergraph, r: int) -> int:
    """Collections of s stars with pairwise disjoint supports, one centred at
    each vertex of some edge (the base)."""
    if r < 2:
        raise ValueError("r must be at least 2")
    supports = [[_support(st, v) for st in stars_at(H, v, r - 1)] for v in range(H.n)]
    return sum(_count_disjoint([supports[v] for v in base]) for base in H.edges)


# -- rainbow ---------------------------------------------------------------------

@dataclass
class RainbowCounts:
    """``stars[i-1]`` counts i-rainbow stars; a star is i-rainbow for at most
    one i (its edges name every other colour), so ``any_stars`` is the sum.
    Constellations likewise."""

    stars: list[int]
    constellations: list[int]

    @property
    def any_stars(self) -> int:
        return sum(self.stars)

    @property
    def any_constellations(self) -> int:
        return sum(self.constellations)

    def as_dict(self) -> dict:
        return {"rainbow_stars": self.any_stars, "rainbow_stars_by_colour": self.stars,
                "rainbow_constellations": self.any_constellations,
                "rainbow_constellations_by_colour": self.constellations}


def _mono_rest(H: UniformHypergraph, colouring: Sequence[int], r: int) -> list[list[list[tuple]]]:
    """``out[v][j]``: edges A through v with A - {v} all coloured j."""
    out = [[[] for _ in range(r + 1)] for _ in range(H.n)]
    for e in H.edges:
        for v in e:
            cols = {colouring[w] for w in e if w != v}
            if len(cols) == 1:
                j = cols.pop()
                if 1 <= j <= r:
                    out[v][j].append(e)
    return out


def _normalise_colouring(H: UniformHypergraph, psi) -> list[int]:
    """Partial colouring as a list with 0 for uncoloured vertices."""
    if isinstance(psi, dict):
        col = [0] * H.n
        for v, c in psi.items():
            col[int(v)] = int(c) if c is not None else 0
        return col
    col = [int(c) if c is not None else 0 for c in psi]
    if len(col) != H.n:
        raise ValueError("colouring must cover every vertex (0 for uncoloured)")
    return col


def count_rainbow(H: UniformHypergraph, r: int, psi) -> RainbowCounts:
    """i-rainbow (r-1)-stars and constellations under a partial colouring.

    Edges of different colour classes through v can only meet in v, so the
    i-rainbow stars at v number the product over j != i of the edges through
    v whose other vertices are all coloured j.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    col = _normalise_colouring(H, psi)
    mono = _mono_rest(H, col, r)
    stars = []
    cons = []
    for i in range(1, r + 1):
        others = [j for j in range(1, r + 1) if j != i]
        stars.append(sum(int(np.prod([len(mono[v][j]) for j in others], dtype=object))
                         for v in range(H.n)))
        supports = {}
        for v in range(H.n):
            lists = [mono[v][j] for j in others]
            supports[v] = [_support(combo, v) for combo in product(*lists)]
        cons.append(sum(_count_disjoint([supports[v] for v in base]) for base in H.edges))
    return RainbowCounts(stars, cons)


# -- Schur prestars --------------------------------------------------------------

def _ray_counts(Y: Sequence[Sequence[int]], N: int) -> np.ndarray:
    """``c[i, a]``: ordered pairs (x, y) in Y_i^2 with a in {x+y, x-y, y-x}."""
    c = np.zeros((len(Y), N), dtype=np.int64)
    for i, Yi in enumerate(Y):
        ys = sorted({int(y) % N for y in Yi})
        for x in ys:
            for y in ys:
                for a in {(x + y) % N, (x - y) % N, (y - x) % N}:
                    c[i, a] += 1
    return c


def prestars_by_centre(Y: Sequence[Sequence[int]], N: int) -> list[int]:
    """Number of prestars ((x, y), a) for each centre a, as exact integers."""
    if N < 1:
        raise ValueError("N must be positive")
    c = _ray_counts(Y, N)
    out = []
    for a in range(N):
        p = 1
        for i in range(len(Y)):
            p *= int(c[i, a])
        out.append(p)
    return out


def count_prestars(Y: Sequence[Sequence[int]], N: int) -> int:
    """Prestars: sequences x, y with x_i, y_i in Y_i and a centre a equal to
    one of x_i + y_i, x_i - y_i, y_i - x_i for every i. Elements may repeat."""
    return sum(prestars_by_centre(Y, N))


def sum_triples(N: int) -> list[tuple[int, int, int]]:
    """Ordered (a, b, c) in Z_N^3 where one entry is the sum of the other two."""
    out = []
    for a in range(N):
        for b in range(N):
            for c in range(N):
                if (a + b) % N == c or (a + c) % N == b or (b + c) % N == a:
                    out.append((a, b, c))
    return out


def count_preconstellations(Y: Sequence[Sequence[int]], N: int) -> int:
    """Ordered triples of prestars whose centres form a sum."""
    P = prestars_by_centre(Y, N)
    return sum(P[a] * P[b] * P[c] for a, b, c in sum_triples(N))


def preconstellation_bound(Y: Sequence[Sequence[int]], N: int) -> Fraction:
    """``2^{-6t} beta^6 N^{3t+2}`` with ``beta = prestars / N^{t+1}``."""
    t = len(Y)
    beta = Fraction(count_prestars(Y, N), N ** (t + 1))
    return Fraction(1, 2 ** (6 * t)) * beta ** 6 * N ** (3 * t + 2)
