"""Cech models over finite nerves: bibundle cocycles, abelian cohomology, obstructions."""

from .abelian import (AbelianCochainComplex, CechClass, CohomologyGroup, abelian_cech_cohomology, cochain_complex,
                      coboundary_matrix, cyclic_decomposition, enumerate_tree_normalized_cocycles)
from .classify import (DEFAULT_MAX_ENUM, ExactSequenceReport, Pi0Catalog, enumerate_pi0, exact_sequence_report,
                       vertexwise_tau)
from .cocycle import (BibundleCocycle, Factorization, Gauge, Structures, TypeAssignment, apply_gauge,
                      bibundle_structures, canonical_form, cocycle_from_doc, cocycle_to_doc, dual_cocycle,
                      equivalent, factor_through_lift, inverse_gauge, iota, is_trivial, kernel_complex,
                      standard_cocycle, tensor_cocycle, trivial_cocycle, twist_by_lift, type_map, validate_cocycle)
from .gfp import betti_mod_p, rank_mod_p, solve_mod_p
from .nerve import (Nerve, builtin_nerves, circ3, disc2, enumerate_edge_labelings, make_nerve, nerve_to_doc, rp26,
                    sphere, validate_nerve)
from .obstruction import ObstructionResult, lifting_obstruction, nontrivial_h1_generator
from .snf import SmithForm, smith_normal_form, solve_congruence
