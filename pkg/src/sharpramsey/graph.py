"""Simple undirected graphs, a small atlas of named graphs, and the text format.

Vertices are ``0..n-1``; edges are stored as sorted ``(u, v)`` tuples with
``u < v`` in a sorted tuple so that equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable


class FormatError(ValueError):
    """Malformed input file; ``line`` is 1-based (0 when not line specific)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(prefix + message)


def _canonical_edges(n: int, edges: Iterable[Iterable[int]]) -> tuple[tuple[int, int], ...]:
    out = set()
    for e in edges:
        u, v = e
        u, v = int(u), int(v)
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        out.add((u, v) if u < v else (v, u))
    return tuple(sorted(out))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", _canonical_edges(n, edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def remove_edge(self, e: tuple[int, int]) -> "Graph":
        e = tuple(sorted(e))
        if e not in self.edges:
            raise ValueError(f"{e} is not an edge")
        return Graph(self.n, [f for f in self.edges if f != e])

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled in increasing order of ``vertices``."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        return Graph(len(vs), [(index[u], index[v]) for u, v in self.edges
                               if u in index and v in index])

    def non_isolated(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d > 0]

    def is_bipartite(self) -> bool:
        return two_colouring(self) is not None

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


def two_colouring(g: Graph) -> list[int] | None:
    """A proper 2-colouring of the vertices as a 0/1 list, or None."""
    adj = g.adjacency()
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return side


# -- atlas -------------------------------------------------------------------

def complete(k: int) -> Graph:
    return Graph(k, combinations(range(k), 2))


def cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> Graph:
    """Path on ``k`` vertices (``k - 1`` edges)."""
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def fano_lines() -> list[tuple[int, int, int]]:
    return [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def parse_graph_spec(spec: str) -> Graph:
    """Named graph: ``complete:k``, ``cycle:k``, ``path:k``, ``petersen``,
    ``complete-bipartite:a,b``."""
    name, _, arg = spec.strip().partition(":")
    name = name.lower()
    try:
        if name == "petersen" and not arg:
            return petersen()
        if name == "complete":
            return complete(int(arg))
        if name == "cycle":
            return cycle(int(arg))
        if name == "path":
            return path(int(arg))
        if name == "complete-bipartite":
            a, b = arg.split(",")
            return complete_bipartite(int(a), int(b))
    except ValueError as exc:
        raise ValueError(f"bad graph spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown graph spec {spec!r}")


# -- text format ---------------------------------------------------------------

def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            yield lineno, line.split()


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header followed by ``m`` lines ``u v``."""
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError("empty graph file", 1)
    lineno, header = lines[0]
    if len(header) != 2:
        raise FormatError("header must be 'n m'", lineno)
    n, m = _ints(header, lineno)
    if n < 0 or m < 0:
        raise FormatError("negative count in header", lineno)
    if len(lines) - 1 != m:
        raise FormatError(f"header declares {m} edges, found {len(lines) - 1}",
                          lines[-1][0] if len(lines) > 1 else lineno)
    edges = []
    for lineno, toks in lines[1:]:
        if len(toks) != 2:
            raise FormatError("edge line must be 'u v'", lineno)
        u, v = _ints(toks, lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex out of range [0, {n})", lineno)
        if u == v:
            raise FormatError("loops are not allowed", lineno)
        edges.append((u, v))
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(rows) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(g))
