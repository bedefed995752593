"""Exact-arithmetic toolkit for Rota-Baxter / relative operators and dendriform algebras."""

from .fields import FieldSpec, RATIONALS, prime_field
from .linalg import (Matrix, StructureTensor, in_span, invert, kernel_basis,
                     rank, solve)
from .structures import (Algebra, Bimodule, BimoduleAlgebra, DendriformDi,
                         DendriformTri, ValidationReport, Violation,
                         algebra_to_field, canonical_bimodule,
                         dendriform_di_to_field, dendriform_tri_to_field,
                         make_algebra, make_dendriform_di, make_dendriform_tri,
                         star_product, validate_associativity,
                         validate_bimodule, validate_bimodule_algebra,
                         validate_dendriform_di, validate_dendriform_tri)
from .operators import (OOperator, RotaBaxterOperator, compose_with_domain_iso,
                        forget_product, is_multiplicative, pullback_domain,
                        rb_as_module_operator, rb_as_o_operator,
                        twist_by_range_automorphism, validate_o_algebra,
                        validate_o_module, validate_o_operator,
                        validate_rota_baxter, with_zero_product)
from .constructions import (QuotientDendriform, canonical_operator_from_di,
                            canonical_operator_from_tri,
                            check_operator_homomorphism, check_splitting,
                            domain_dendriform_di, domain_dendriform_tri,
                            kernel_ideal_check, range_dendriform_di,
                            range_dendriform_quotient, range_dendriform_tri)
from .equivalence import (IsoSearchResult, IsoWitness, gl_matrices,
                          induced_intertwiner, search_dendriform_iso_fp,
                          transported_pair, verify_dendriform_iso,
                          verify_operator_equiv, verify_operator_iso)
from .enumeration import (DEFAULT_BUDGET, PhiImageResult,
                          enumerate_associative_products,
                          enumerate_dendriform_di, enumerate_rb_operators,
                          phi_image_experiment)
from .catalogue import CatalogueEntry, builtin_catalogue, catalogue_entry
from .documents import Document, ResultSet, emit_document, parse_document

__version__ = "0.1.0"
