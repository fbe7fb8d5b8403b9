"""Exact and Monte Carlo tools for Ramsey properties of random sets: family
hypergraphs, pattern-graph analysis, colouring and list-colouring searches,
degenerate/clot structure, and threshold experiments."""

from .graph import FormatError, Graph, parse_graph_spec
from .hypergraph import (UniformHypergraph, build_copies_hypergraph, build_kap_hypergraph,
                         build_schur_hypergraph, degree_profile, fano_plane, p_H,
                         parse_family_spec, trim_by_degree)
from .search import Budget, Decision
from .analysis import (graph_report, has_rainbow_sc_property, is_collapsible,
                       is_semi_collapsible, two_density)
from .colouring import (arrow_check, is_2_choosable, is_2_choosable_wrt, is_list_schur,
                        is_list_vdw, min_monochromatic_edges, proper_colouring)
from .structure import check_obstruction, find_clots, reveal_layers
from .homomorphism import hom_count, hom_density
from .sampling import monte_carlo, threshold_curve

__version__ = "0.1.0"
