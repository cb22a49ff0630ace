"""Exact verification and construction of Poisson-type algebra structures.

Algebras are given by structure constants over the rationals or GF(p);
identities are checked exhaustively on basis tuples.
"""
from .axioms import (AXIOMS, PROFILES, CheckReport, ViolationWitness, axiom_names, check_identity,
                     check_profile, evaluate_identity, failing, passes, reverify)
from .catalog import (CatalogEntry, catalog_2d_derivation_induced, catalog_2d_transposed, catalog_entry,
                      full_catalog, invariant_fingerprint, nonabelian_d, prelie_poisson_2d_example,
                      truncated_polynomial_algebra)
from .constructions import (PreconditionError, commutator_bracket, derivation_bracket, gelfand_product,
                            hom_lie_structure, multiplication_map, nlie_ladder_step, rescaled_bracket, tensor_mixed,
                            three_lie_from_derivation, three_lie_from_involution, three_lie_from_poisson,
                            two_derivation_bracket, wedge_bracket)
from .core import (AlgebraBundle, BasisSpace, Element, LinearMap, MultiLinearOp, apply_linear_map,
                   evaluate_op, normalize_op, op_from_function, op_from_terms)
from .fields import GF, QQ, Residue, field_from_descriptor, scalar_parse
from .formats import FormatError, emit_algebra, emit_report, parse_algebra, parse_report, reverify_json_witness
from .linsolve import (SolutionSpace, compatible_symmetric_products, derivation_space, filter_associative,
                       joint_derivation_space, nullspace, rank, rref)
from .search import (SearchReport, SplitMix64, find_involutive_antimorphisms, sample_tpa_instances,
                     test_conjecture_ladder)

__version__ = "0.1.0"
