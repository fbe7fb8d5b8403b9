"""Binomial random subsets with order-independent streams, Monte Carlo
property frequencies and threshold curves.

Randomness: trial ``i`` under seed ``s`` uses the key
``splitmix64(splitmix64(s) ^ (i * 0xD1B54A32D192ED03 mod 2^64))``, and vertex
``v`` draws ``u_v = (splitmix64(key + v) >> 11) * 2^-53``. Vertex v is kept
iff ``u_v < p``. Because u does not depend on p, the samples at different p
are nested, which makes monotone properties monotone trial by trial.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import isotonic_regression

from .analysis import two_density
from .colouring import find_non_choosable_subsets, is_2_choosable, proper_colouring
from .graph import parse_graph_spec
from .hypergraph import (UniformHypergraph, build_copies_hypergraph,
                         build_kap_hypergraph, build_schur_hypergraph, induced)
from .search import Budget, BudgetExceeded
from .structure import count_degenerate, find_clots, reveal_layers

MASK64 = (1 << 64) - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TRIAL_MULT = 0xD1B54A32D192ED03


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _splitmix64_array(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = x + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        return z ^ (z >> np.uint64(31))


def trial_key(seed: int, trial_index: int) -> int:
    return splitmix64(splitmix64(seed & MASK64) ^ ((trial_index * _TRIAL_MULT) & MASK64))


def uniforms(n: int, seed: int, trial_index: int) -> np.ndarray:
    """The n per-vertex uniforms of one trial, in [0, 1)."""
    key = np.uint64(trial_key(seed, trial_index))
    with np.errstate(over="ignore"):
        z = _splitmix64_array(key + np.arange(n, dtype=np.uint64))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def sample_subset(n: int, p: float, seed: int, trial_index: int) -> list[int]:
    """Vertices kept in trial ``trial_index``, each independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return np.flatnonzero(uniforms(n, seed, trial_index) < p).tolist()


def wilson(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval (95% by default)."""
    if trials == 0:
        return 0.0, 1.0
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


# -- properties ------------------------------------------------------------------

PROPERTIES = ("non-r-colourable", "contains-clot", "has-degenerates",
              "non-2-choosable-subset", "list-schur", "list-vdw")


@dataclass(frozen=True)
class SampleConfig:
    """One Monte Carlo run: probability, trial count, seed and property tag.

    ``r`` is the number of colours (or the list colour universe for the
    choosability properties) and ``k`` the subset size cap.
    """

    p: float
    trials: int
    seed: int
    property: str = "non-r-colourable"
    r: int = 2
    k: int = 8
    max_nodes: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.property not in PROPERTIES:
            raise ValueError(f"unknown property {self.property!r}")


def evaluate(H: UniformHypergraph, W: list[int], prop: str, r: int, k: int,
             max_nodes: int | None) -> bool | None:
    """Whether H[W] has the property; None when the search budget ran out."""
    budget = Budget(max_nodes=max_nodes)
    try:
        if prop == "non-r-colourable":
            sub, _ = induced(H, W)
            d = proper_colouring(sub, r, budget=budget)
            return None if d.verdict is None else not d.verdict
        if prop == "contains-clot":
            return bool(find_clots(H, W))
        if prop == "has-degenerates":
            # per connected component of H[W]
            for comp in H.components(W):
                if len(comp) > 1 and count_degenerate(reveal_layers(H, comp)) >= H.s - 1:
                    return True
            return False
        if prop == "non-2-choosable-subset":
            return bool(find_non_choosable_subsets(H, k, r, within=W, budget=budget,
                                                   stop_at_first=True))
        if prop in ("list-schur", "list-vdw"):
            sub, _ = induced(H, W)
            d = is_2_choosable(sub, max(r, 2), budget=budget)
            return None if d.verdict is None else not d.verdict
    except BudgetExceeded:
        return None
    raise ValueError(f"unknown property {prop!r}")


def _run_chunk(args) -> list[tuple[int, int, bool | None]]:
    H, ps, seed, lo, hi, prop, r, k, max_nodes = args
    out = []
    for t in range(lo, hi):
        u = uniforms(H.n, seed, t)
        for j, p in enumerate(ps):
            W = np.flatnonzero(u < p).tolist()
            out.append((j, t, evaluate(H, W, prop, r, k, max_nodes)))
    return out


def _tally(H, ps, seed, trials, prop, r, k, max_nodes, workers):
    """Per grid point: (successes, inconclusive). Every trial is evaluated
    on its own stream and the totals are sums, so neither the chunking nor
    ``workers`` can change them."""
    chunk = max(1, min(64, trials // max(1, 4 * workers) or 1))
    jobs = [(H, list(ps), seed, lo, min(trials, lo + chunk), prop, r, k, max_nodes)
            for lo in range(0, trials, chunk)]
    succ = [0] * len(ps)
    inc = [0] * len(ps)
    if workers <= 1:
        results = map(_run_chunk, jobs)
        for res in results:
            _accumulate(res, succ, inc)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for res in pool.map(_run_chunk, jobs):
                _accumulate(res, succ, inc)
    return succ, inc


def _accumulate(res, succ, inc):
    for j, _, v in res:
        if v is None:
            inc[j] += 1
        elif v:
            succ[j] += 1


@dataclass
class MonteCarloResult:
    p: float
    successes: int
    inconclusive: int
    trials: int

    @property
    def decided(self) -> int:
        return self.trials - self.inconclusive

    @property
    def freq(self) -> float:
        return self.successes / self.decided if self.decided else float("nan")

    @property
    def interval(self) -> tuple[float, float]:
        return wilson(self.successes, self.decided)

    def as_dict(self) -> dict:
        lo, hi = self.interval
        return {"p": self.p, "successes": self.successes, "inconclusive": self.inconclusive,
                "trials": self.trials, "freq": self.freq, "wilson_lo": lo, "wilson_hi": hi}


def monte_carlo(H: UniformHypergraph, cfg: SampleConfig, workers: int = 1) -> MonteCarloResult:
    """Frequency of ``cfg.property`` in ``H[V_p]`` over ``cfg.trials`` samples.

    Inconclusive evaluations are reported apart and left out of the frequency.
    """
    succ, inc = _tally(H, [cfg.p], cfg.seed, cfg.trials, cfg.property, cfg.r, cfg.k,
                       cfg.max_nodes, workers)
    return MonteCarloResult(cfg.p, succ[0], inc[0], cfg.trials)


# -- threshold curves ----------------------------------------------------------

@dataclass
class Family:
    """A parametrised family: its hypergraph at a given size and the
    exponent e with threshold scale size^(-1/e)."""

    name: str
    hypergraph: UniformHypergraph
    exponent: Fraction
    r: int


def make_family(name: str, size: int, r: int = 2, k: int = 3, pattern: str = "complete:3") -> Family:
    """``copies`` (of ``pattern`` in K_size), ``kap`` (k-APs in Z_size) or ``schur``."""
    if name == "copies":
        H = parse_graph_spec(pattern)
        return Family(name, build_copies_hypergraph(H, size), two_density(H), r)
    if name == "kap":
        return Family(name, build_kap_hypergraph(k, size), Fraction(k - 1), r)
    if name == "schur":
        return Family(name, build_schur_hypergraph(size), Fraction(2), r)
    raise ValueError(f"unknown family {name!r}")


@dataclass
class ThresholdCurve:
    grid: list[float]
    successes: list[int]
    inconclusive: list[int]
    trials: int
    size: int
    exponent: Fraction
    fitted: list[float] = field(default_factory=list)

    @property
    def decided(self) -> list[int]:
        return [self.trials - i for i in self.inconclusive]

    @property
    def freq(self) -> list[float]:
        return [s / d if d else float("nan") for s, d in zip(self.successes, self.decided)]

    def intervals(self) -> list[tuple[float, float]]:
        return [wilson(s, d) for s, d in zip(self.successes, self.decided)]

    def crossing(self, level: float) -> float | None:
        """Linear interpolation of the isotonic fit at ``level``; None if the
        fit does not bracket it."""
        f, g = self.fitted, self.grid
        if not f or f[0] > level or f[-1] < level:
            return None
        for i in range(len(f)):
            if f[i] >= level:
                if i == 0 or f[i] == f[i - 1]:
                    return g[i]
                return g[i - 1] + (level - f[i - 1]) * (g[i] - g[i - 1]) / (f[i] - f[i - 1])
        return None

    @property
    def p_hat(self) -> float | None:
        return self.crossing(0.5)

    @property
    def width(self) -> float | None:
        hi, lo = self.crossing(0.9), self.crossing(0.1)
        return None if hi is None or lo is None else hi - lo

    @property
    def scaled(self) -> float | None:
        ph = self.p_hat
        return None if ph is None else ph * self.size ** (1 / float(self.exponent))

    def to_csv(self) -> str:
        rows = ["p,successes,trials,freq,wilson_lo,wilson_hi"]
        for p, s, d, (lo, hi) in zip(self.grid, self.successes, self.decided, self.intervals()):
            freq = s / d if d else float("nan")
            rows.append(f"{p!r},{s},{d},{freq:.10g},{lo:.10g},{hi:.10g}")
        return "\n".join(rows) + "\n"

    def summary(self) -> dict:
        return {"size": self.size, "exponent": str(self.exponent), "trials": self.trials,
                "p_hat": self.p_hat, "censored": self.p_hat is None,
                "width": self.width, "scaled": self.scaled,
                "inconclusive": sum(self.inconclusive)}


def _isotonic(freq: list[float], weights: list[int]) -> list[float]:
    pts = [(f, w) for f, w in zip(freq, weights) if w > 0]
    if not pts:
        return []
    res = isotonic_regression(np.array([f for f, _ in pts]),
                              weights=np.array([w for _, w in pts], dtype=float))
    fitted = iter(res.x.tolist())
    out, last = [], 0.0
    for f, w in zip(freq, weights):
        last = next(fitted) if w > 0 else last
        out.append(last)
    return out


def threshold_curve(family: Family | UniformHypergraph, size: int, grid: Sequence[float],
                    trials: int, seed: int, r: int | None = None,
                    exponent: Fraction | None = None, workers: int = 1,
                    max_nodes: int | None = None) -> ThresholdCurve:
    """Frequency of non-r-colourability of ``H[V_p]`` across ``grid``.

    All grid points reuse the trial streams, so each trial's outcome is
    monotone in p. The isotonic fit (weighted by decided trials) is stored in
    ``fitted``, separately from the raw counts.
    """
    grid = [float(p) for p in grid]
    if any(not 0.0 <= p <= 1.0 for p in grid):
        raise ValueError("grid values must lie in [0, 1]")
    if sorted(grid) != grid:
        raise ValueError("grid must be increasing")
    if trials < 1:
        raise ValueError("trials must be positive")
    if isinstance(family, Family):
        H, r, exponent = family.hypergraph, r or family.r, exponent or family.exponent
    else:
        H = family
        if r is None or exponent is None:
            raise ValueError("r and exponent are needed for a bare hypergraph")
    succ, inc = _tally(H, grid, seed, trials, "non-r-colourable", r, 0, max_nodes, workers)
    curve = ThresholdCurve(grid, succ, inc, trials, size, Fraction(exponent))
    curve.fitted = _isotonic(curve.freq, curve.decided)
    return curve


def parse_grid(spec: str) -> list[float]:
    """``a,b,c`` or ``start:stop:count`` (inclusive, evenly spaced)."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad grid spec {spec!r}")
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise ValueError("grid needs at least one point")
        if n == 1:
            return [a]
        return [round(a + (b - a) * i / (n - 1), 12) for i in range(n)]
    return [float(x) for x in spec.split(",") if x.strip()]


def read_config(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)
