"""Janson's lower-tail inequality: pseudo-variance, the bound, and Monte Carlo
checks of the bound and of local coarseness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .sampling import uniforms


@dataclass(frozen=True)
class JansonInput:
    """Subsets B_i of a ground set ``0..n-1`` (repeats allowed), a retention
    probability p and a deviation t."""

    sets: tuple[frozenset[int], ...]
    p: float
    t: float

    def __init__(self, sets: Iterable[Iterable[int]], p: float, t: float):
        object.__setattr__(self, "sets", tuple(frozenset(int(x) for x in B) for B in sets))
        object.__setattr__(self, "p", float(p))
        object.__setattr__(self, "t", float(t))
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")

    @property
    def ground(self) -> int:
        return max((max(B) for B in self.sets if B), default=-1) + 1


def expectation(sets: Sequence[Iterable[int]], p: float) -> float:
    """``mu = sum_i p^{|B_i|}``."""
    return math.fsum(p ** len(set(B)) for B in sets)


def pseudo_variance(sets: Sequence[Iterable[int]], p: float) -> float:
    """Sum over ordered pairs (i, j), i = j included, with intersecting
    B_i, B_j of ``p^{|B_i u B_j|}``.

    Pairs are found through an element index instead of testing all k^2.
    """
    sets = [frozenset(B) for B in sets]
    by_elem: dict[int, list[int]] = {}
    for i, B in enumerate(sets):
        for x in B:
            by_elem.setdefault(x, []).append(i)
    terms = []
    for i, B in enumerate(sets):
        # an empty B meets nothing, not even itself
        partners = set()
        for x in B:
            partners.update(by_elem[x])
        for j in partners:
            terms.append(p ** len(B | sets[j]))
    return math.fsum(terms)


def janson_bound(inp: JansonInput) -> float:
    """``exp(-t^2 / (2 Var'))``, a bound on ``Pr(X <= mu - t)``."""
    mu = expectation(inp.sets, inp.p)
    if not 0.0 <= inp.t <= mu * (1 + 1e-12):
        raise ValueError(f"t must lie in [0, mu] = [0, {mu}]")
    if inp.t == 0:
        return 1.0
    var = pseudo_variance(inp.sets, inp.p)
    return math.exp(-inp.t * inp.t / (2 * var))


@dataclass
class LowerTailEstimate:
    mu: float
    bound: float
    hits: int
    trials: int

    @property
    def freq(self) -> float:
        return self.hits / self.trials

    @property
    def sigma(self) -> float:
        """Standard error of the frequency if the true probability were the bound."""
        b = min(self.bound, 1.0)
        return math.sqrt(b * (1 - b) / self.trials)

    @property
    def within(self) -> bool:
        return self.freq <= self.bound + 3 * self.sigma

    def as_dict(self) -> dict:
        return {"mu": self.mu, "bound": self.bound, "freq": self.freq, "hits": self.hits,
                "trials": self.trials, "sigma": self.sigma, "within": self.within}


def _incidence(sets: Sequence[frozenset[int]], n: int) -> np.ndarray:
    M = np.zeros((len(sets), n), dtype=np.int32)
    for i, B in enumerate(sets):
        for x in B:
            M[i, x] = 1
    return M


def lower_tail_monte_carlo(inp: JansonInput, trials: int, seed: int) -> LowerTailEstimate:
    """Empirical ``Pr(X <= mu - t)`` next to the bound."""
    n = inp.ground
    sets = list(inp.sets)
    M = _incidence(sets, n)
    sizes = M.sum(axis=1)
    mu = expectation(sets, inp.p)
    bound = janson_bound(inp)
    level = mu - inp.t
    hits = 0
    for k in range(trials):
        kept = (uniforms(n, seed, k) < inp.p).astype(np.int32)
        X = int(np.count_nonzero(M @ kept == sizes))
        if X <= level + 1e-12:
            hits += 1
    return LowerTailEstimate(mu, bound, hits, trials)


@dataclass
class CoarsenessReport:
    mu_p: float
    mu_cp: float
    c: float
    K: int
    slack: float
    exact: bool

    @property
    def holds(self) -> bool:
        return self.mu_cp >= self.c ** self.K * self.mu_p - self.slack

    def as_dict(self) -> dict:
        return {"mu_p": self.mu_p, "mu_cp": self.mu_cp, "c": self.c, "K": self.K,
                "ratio_bound": self.c ** self.K, "slack": self.slack,
                "exact": self.exact, "holds": self.holds}


def local_coarseness_check(family: Sequence[Iterable[int]], n: int, p: float, c: float,
                           trials: int = 1000, seed: int = 0) -> CoarsenessReport:
    """Compare ``mu(cp)`` with ``c^K mu(p)`` where ``mu(q)`` is the probability
    that ``V_q`` contains some member of the family.

    Singleton families use the closed form ``1 - (1-q)^m``; otherwise both
    probabilities come from the same uniforms (so ``V_cp`` is inside ``V_p``)
    and the slack is three standard errors of the difference.
    """
    if not 0 < c <= 1:
        raise ValueError("c must lie in (0, 1]")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    sets = [frozenset(int(x) for x in B) for B in family]
    if not sets:
        raise ValueError("family must be nonempty")
    K = max(len(B) for B in sets)
    if all(len(B) == 1 for B in sets):
        m = len(set().union(*sets))
        return CoarsenessReport(1 - (1 - p) ** m, 1 - (1 - c * p) ** m, c, K, 0.0, True)
    M = _incidence(sets, n)
    sizes = M.sum(axis=1)
    hit_p = hit_cp = 0
    for k in range(trials):
        u = uniforms(n, seed, k)
        if np.any(M @ (u < p).astype(np.int32) == sizes):
            hit_p += 1
        if np.any(M @ (u < c * p).astype(np.int32) == sizes):
            hit_cp += 1
    mp, mcp = hit_p / trials, hit_cp / trials
    var = (mcp * (1 - mcp) + c ** (2 * K) * mp * (1 - mp)) / trials
    return CoarsenessReport(mp, mcp, c, K, 3 * math.sqrt(var), False)
