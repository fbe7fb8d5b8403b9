"""
Collapsibility atlas
====================

For a handful of small patterns H, print the 2-density and the three
structural predicates that decide which list-colouring arguments apply:
collapsibility, semi-collapsibility and the rainbow star-constellation
property for 2 and 3 colours.
"""

from sharpramsey.analysis import graph_report
from sharpramsey.graph import Graph, complete, complete_bipartite, cycle, path, petersen

ATLAS = {
    "K3": complete(3),
    "K4": complete(4),
    "K5": complete(5),
    "C4": cycle(4),
    "C5": cycle(5),
    "C7": cycle(7),
    "P4": path(4),
    "K2,3": complete_bipartite(2, 3),
    "petersen": petersen(),
    "petersen+chord": Graph(10, list(petersen().edges) + [(0, 2)]),
}

fmt = "{:<15} {:>6} {:>9} {:>12} {:>6} {:>6} {:>6}"
print(fmt.format("H", "m2", "balanced", "collapsible", "semi", "rsc2", "rsc3"))
for name, H in ATLAS.items():
    rep = graph_report(H)
    print(fmt.format(name, str(rep.m2), str(rep.strictly_2_balanced), str(rep.collapsible),
                     str(rep.semi_collapsible), str(rep.rsc[2]), str(rep.rsc[3])))

# Petersen is the interesting row: dense enough to look like a clique, but
# no edge-deleted copy folds onto another one with the edge contracted.
