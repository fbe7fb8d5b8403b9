"""
Threshold curves at desk scale
==============================

Sample random subsets of two Ramsey hypergraphs and watch the probability
that the sample is not 2-colourable climb from 0 to 1. The point where the
(isotonic) curve crosses 1/2, multiplied by n^(1/2), should stay roughly
constant as n grows.
"""

import math

from sharpramsey.sampling import make_family, threshold_curve

TRIALS = 200
SCALES = [0.8 + 0.2 * i for i in range(15)]

# triangles in K_n: vertices are edges of K_n, hyperedges are triangles
# Schur triples in Z_N: hyperedges are {x, y, x + y}
for family, sizes in (("copies", (8, 12, 16)), ("schur", (31, 61, 97))):
    print(f"\n{family}")
    print(f"{'n':>5} {'p_hat':>8} {'p_hat*sqrt(n)':>14} {'10-90 width':>12}")
    for n in sizes:
        grid = sorted({min(1.0, round(c / math.sqrt(n), 12)) for c in SCALES})
        curve = threshold_curve(make_family(family, n), n, grid, TRIALS, seed=1)
        s = curve.summary()
        width = "-" if s["width"] is None else f"{s['width']:.3f}"
        print(f"{n:>5} {s['p_hat']:>8.4f} {s['scaled']:>14.3f} {width:>12}")

# the raw counts behind the last curve, as the CLI would write them
print()
print(curve.to_csv())
