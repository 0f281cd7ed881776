"""Bernardi processes, Jaeger trees, interior/exterior polynomials, and
an exact root-polytope verifier for ribbon bipartite graphs."""

__version__ = "0.1.0"

from .bernardi import (HT_E_CUT_E, HT_E_CUT_V, HT_V_CUT_E, HT_V_CUT_V,
                       BernardiRun, ProcessVariant, TheoremViolation,
                       bernardi_exterior, bernardi_interior,
                       check_composition, embedding_inactivities,
                       graph_specialization_check, induced_class_order,
                       run_bernardi)
from .campaign import (CampaignReport, arborescence_duality,
                       campaign_verify_all, check_conjectures,
                       fuzz_conjectures, verify_noncrossing)
from .docio import (GraphFormatError, format_polynomial, parse_graph,
                    parse_hypertree, serialize_graph)
from .graph import (EMERALD, VIOLET, RibbonBipartiteGraph, RibbonGraph, Tour,
                    ValidationError, bip)
from .hypertree import (Poly, break_divisors, can_transfer, degree_vector,
                        enumerate_hypertrees,exterior_polynomial,
                        external_inactivity, interior_polynomial,
                        internal_inactivity, is_hypertree, tutte_check,
                        tutte_x_polynomial)
from .jaeger import (ECUT, VCUT, TOrder, characterize_edge, compare_trees,
                     enumerate_jaeger_trees, graph_activity_matching,
                     is_jaeger_tree, semi_passive_edges, t_order)
from .polytope import (TreeSimplex, ehrhart_values, ehrhart_values_scan,
                       fit_binomial_coefficients, geometric_shelling_check,
                       intersection_is_common_face, kato_series_check,
                       marker, shelling_h_vector, simplex_contains,
                       trees_compatible, verify_dissection)
