"""Layer-revealing of connected vertex sets, degenerate elements, clots, and
the check that minimal non-2-choosable sets carry one or the other."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .colouring import find_non_choosable_subsets, is_2_choosable
from .hypergraph import UniformHypergraph, induced
from .search import Budget


@dataclass(frozen=True)
class RevealStep:
    step: int
    kind: str            # "new-layer" or "degenerate"
    edge: tuple[int, ...] | None
    new_vertices: tuple[int, ...]
    layer: int

    def as_dict(self) -> dict:
        return {"step": self.step, "kind": self.kind,
                "edge": list(self.edge) if self.edge is not None else None,
                "new_vertices": list(self.new_vertices), "layer": self.layer}


@dataclass
class RevealTrace:
    s: int
    vertices: frozenset[int]
    layers: list[frozenset[int]]
    steps: list[RevealStep]
    arrival: dict[int, int]
    degenerate: dict[int, bool]

    @property
    def d(self) -> int:
        return len(self.layers)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(st.as_dict(), separators=(",", ":")) + "\n"
                       for st in self.steps)


def reveal_layers(H: UniformHypergraph, S: Iterable[int]) -> RevealTrace:
    """Reveal ``S`` from its smallest vertex.

    Inside a layer, the lexicographically smallest edge of H[S] meeting the
    revealed set in 2..s-1 vertices is absorbed (a degenerate step) until none
    remains. A new layer then starts from the smallest revealed vertex lying
    in an edge of H[S] that meets the revealed set only there, through the
    smallest such edge.
    """
    S = frozenset(int(v) for v in S)
    if not S:
        raise ValueError("S must be nonempty")
    if any(not 0 <= v < H.n for v in S):
        raise ValueError("S has out-of-range vertices")
    if not H.is_connected_on(S):
        raise ValueError("H[S] is not connected")
    s = H.s
    edges = [e for e in H.edges if S.issuperset(e)]  # already lexicographic
    v1 = min(S)
    revealed = {v1}
    arrival = {v1: 0}
    degenerate = {v1: False}
    steps = [RevealStep(0, "new-layer", None, (v1,), 1)]
    layers: list[frozenset[int]] = []
    layer = 1

    def add(e, kind):
        new = tuple(v for v in e if v not in revealed)
        st = len(steps)
        for v in new:
            arrival[v] = st
            degenerate[v] = kind == "degenerate"
        revealed.update(new)
        steps.append(RevealStep(st, kind, e, new, layer))

    while True:
        while True:
            for e in edges:
                k = sum(1 for v in e if v in revealed)
                if 2 <= k <= s - 1:
                    add(e, "degenerate")
                    break
            else:
                break
        layers.append(frozenset(revealed))
        if len(revealed) == len(S):
            break
        choice = None
        for v in sorted(revealed):
            for e in edges:
                if v in e and all(w == v or w not in revealed for w in e):
                    choice = e
                    break
            if choice:
                break
        assert choice is not None, "connected S always offers a new layer"
        layer += 1
        add(choice, "new-layer")
    trace = RevealTrace(s, S, layers, steps, arrival, degenerate)
    assert count_degenerate(trace) == len(S) - 1 - (trace.d - 1) * (s - 1)
    return trace


def count_degenerate(trace: RevealTrace) -> int:
    return sum(1 for flag in trace.degenerate.values() if flag)


def truncate_at_degenerate(trace: RevealTrace, k: int) -> tuple[frozenset[int], int] | None:
    """Stop the procedure right after the step revealing the k-th degenerate
    vertex: the set revealed so far and the number of degenerate steps used.
    None if the trace has fewer than k degenerate vertices."""
    seen = steps = 0
    revealed: set[int] = set()
    for st in trace.steps:
        revealed.update(st.new_vertices)
        if st.kind == "degenerate":
            steps += 1
            seen += len(st.new_vertices)
            if seen >= k:
                return frozenset(revealed), steps
    return None


# -- clots -----------------------------------------------------------------------

@dataclass(frozen=True)
class Clot:
    """A nucleus of size 2s-3 with two outside completions per (s-1)-subset.

    ``completions`` keeps the two smallest completions; ``counts`` the total
    number available inside the searched set.
    """

    nucleus: tuple[int, ...]
    completions: dict
    counts: dict = field(compare=False)

    @property
    def support(self) -> frozenset[int]:
        out = set(self.nucleus)
        for pair in self.completions.values():
            out.update(pair)
        return frozenset(out)

    def as_dict(self) -> dict:
        return {"nucleus": list(self.nucleus),
                "completions": [[list(k), list(v)] for k, v in sorted(self.completions.items())],
                "support": sorted(self.support)}


def _completions(H: UniformHypergraph, W: frozenset[int]) -> dict[tuple, list[int]]:
    out: dict[tuple, list[int]] = {}
    for e in H.edges:
        if W.issuperset(e):
            for v in e:
                T = tuple(w for w in e if w != v)
                out.setdefault(T, []).append(v)
    for lst in out.values():
        lst.sort()
    return out


def find_clots(H: UniformHypergraph, W: Iterable[int] | None = None) -> list[Clot]:
    """All clots with support inside W (default: every vertex), ordered by nucleus."""
    if H.s < 3:
        raise ValueError("clots need s >= 3")
    W = frozenset(range(H.n)) if W is None else frozenset(W)
    s = H.s
    comp = _completions(H, W)
    rich = {T for T, vs in comp.items() if len(vs) >= 2}
    pool = sorted({v for T in rich for v in T})
    clots = []
    for A in combinations(pool, 2 * s - 3):
        Aset = set(A)
        chosen, counts = {}, {}
        for T in combinations(A, s - 1):
            if T not in rich:
                break
            outside = [v for v in comp[T] if v not in Aset]
            if len(outside) < 2:
                break
            chosen[T] = (outside[0], outside[1])
            counts[T] = len(outside)
        else:
            clots.append(Clot(A, chosen, counts))
    return clots


# -- degenerate-or-clot check -------------------------------------------------------

@dataclass
class ObstructionReport:
    applicable: bool
    degenerate: int | None = None
    clots: list[Clot] = field(default_factory=list)
    holds: bool | None = None
    trace: RevealTrace | None = None
    reason: str = ""

    def as_dict(self) -> dict:
        return {"applicable": self.applicable, "degenerate": self.degenerate,
                "clots": [c.as_dict() for c in self.clots], "holds": self.holds,
                "d": self.trace.d if self.trace else None, "reason": self.reason}


def is_minimally_non_choosable(H: UniformHypergraph, S, r: int = 4,
                               budget: Budget | None = None) -> bool | None:
    """H[S] non-2-choosable while every one-vertex deletion is choosable."""
    S = sorted(set(S))
    sub, _ = induced(H, S)
    d = is_2_choosable(sub, r, budget=budget)
    if d.verdict is None:
        return None
    if d.verdict:
        return False
    for v in S:
        sv, _ = induced(H, [w for w in S if w != v])
        d = is_2_choosable(sv, r, budget=budget)
        if d.verdict is None:
            return None
        if not d.verdict:
            return False
    return True


def check_obstruction(H: UniformHypergraph, S, r: int = 4,
                      budget: Budget | None = None) -> ObstructionReport:
    """For a minimally non-2-choosable S: does it have at least s-1
    degenerate elements or contain a clot? ``holds`` False flags a
    counterexample, which would point to a bug."""
    S = frozenset(S)
    minimal = is_minimally_non_choosable(H, S, r, budget)
    if minimal:
        return _disjunction(H, S)
    reason = "inconclusive choosability check" if minimal is None \
        else "not minimally non-2-choosable"
    # the structure is still reported, only the verdict is withheld
    trace = reveal_layers(H, S) if S and H.is_connected_on(S) else None
    return ObstructionReport(False, count_degenerate(trace) if trace else None,
                             find_clots(H, S) if H.s >= 3 else [], None, trace, reason)


def _disjunction(H: UniformHypergraph, S: frozenset[int]) -> ObstructionReport:
    trace = reveal_layers(H, S)
    deg = count_degenerate(trace)
    if deg >= H.s - 1:
        assert trace.d <= (len(S) - 1) / (H.s - 1)
        cut = truncate_at_degenerate(trace, H.s - 1)
        assert cut is not None and cut[1] <= H.s - 1
        assert H.is_connected_on(cut[0])
    clots = find_clots(H, S)
    return ObstructionReport(True, deg, clots, deg >= H.s - 1 or bool(clots), trace)


@dataclass
class SweepResult:
    instances: int = 0
    minimal_sets: int = 0
    by_degenerate: int = 0
    by_clot_only: int = 0
    violations: list = field(default_factory=list)


def random_bounded_codegree(n: int, m: int, s: int, max_codegree: int,
                            rng: random.Random) -> UniformHypergraph:
    """Up to m random s-sets of ``0..n-1`` added while every (s-1)-set stays
    in at most ``max_codegree`` edges."""
    all_sets = list(combinations(range(n), s))
    rng.shuffle(all_sets)
    codeg: dict[tuple, int] = {}
    edges = []
    for e in all_sets:
        if len(edges) >= m:
            break
        subs = list(combinations(e, s - 1))
        if all(codeg.get(T, 0) < max_codegree for T in subs):
            edges.append(e)
            for T in subs:
                codeg[T] = codeg.get(T, 0) + 1
    return UniformHypergraph(s, n, edges)


def obstruction_sweep(hypergraphs: Iterable[UniformHypergraph], max_size: int = 8,
                      r: int = 4) -> SweepResult:
    """Check the degenerate-or-clot disjunction on every minimally
    non-2-choosable connected set of size at most ``max_size``."""
    res = SweepResult()
    for H in hypergraphs:
        res.instances += 1
        for item in find_non_choosable_subsets(H, max_size, r):
            if not item.minimal:
                continue
            res.minimal_sets += 1
            rep = _disjunction(H, frozenset(item.vertices))
            if rep.degenerate >= H.s - 1:
                res.by_degenerate += 1
            elif rep.clots:
                res.by_clot_only += 1
            else:
                res.violations.append((H, item.vertices))
    return res
