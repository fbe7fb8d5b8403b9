"""
How many stars?
===============

A k-star is k edges through a common centre that otherwise avoid each
other. For hypergraphs with small co-degrees the number of (r-1)-stars is
at least c * e^(r-1) / v^(r-2) with c = 2^-r / (r-1)!. This script only
reports the ratio of the exact count to that quantity; nothing is asserted.
"""

import math
import random

from sharpramsey.counting import count_stars
from sharpramsey.hypergraph import build_kap_hypergraph, build_schur_hypergraph, fano_plane
from sharpramsey.structure import random_bounded_codegree


def lower(H, r):
    c = 2.0 ** -r / math.factorial(r - 1)
    return c * H.e ** (r - 1) / H.n ** (r - 2)


cases = [("fano", fano_plane()), ("schur 31", build_schur_hypergraph(31)),
         ("schur 61", build_schur_hypergraph(61)), ("3-AP 41", build_kap_hypergraph(3, 41))]
rng = random.Random(5)
for i in range(3):
    cases.append((f"random {i}", random_bounded_codegree(30, 80, 3, 2, rng)))

print(f"{'hypergraph':<12} {'r':>2} {'stars':>10} {'bound':>12} {'ratio':>8}")
for name, H in cases:
    for r in (2, 3, 4):
        got, b = count_stars(H, r), lower(H, r)
        print(f"{name:<12} {r:>2} {got:>10} {b:>12.2f} {got / b:>8.2f}")
