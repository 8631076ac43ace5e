"""Exact Dolbeault, Bott-Chern, Aeppli and de Rham cohomology of bounded
double complexes, and a Hodge-diamond calculus for products, projective
bundles, blow-ups and flag bundles."""

from .constructions import (LongExactSequence, Morphism, direct_sum, induced_bc_dims_equal,
                            is_E1_isomorphism, leray_hirsch_model, ses_to_les, shift, tensor)
from .double_complex import (THEORIES, CohomologyTable, DoubleComplex, check_ddbar, cohomology,
                             natural_map_bc_to_dolbeault, validate)
from .dsl import evaluate, parse_expr, to_text
from .errors import HodgeError
from .fixtures import builtin_complex, leaf
from .hodge import (HodgePolynomial, blow_up, flag_bundle, gaussian_multinomial, kunneth,
                    lh_consistency, projective_bundle, q_complete_obstruction)
from .linalg import (I, Matrix, Scalar, coordinates_in_span, kernel_basis, rank,
                     subspace_dims)
from .serialize import load, save

__version__ = "0.1.0"
