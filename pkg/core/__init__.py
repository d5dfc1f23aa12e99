"""PencilSpec numerical core."""

from .almost import (
    AlmostReport,
    CommutantBoundReport,
    almost_common_eigenvector,
    block_compression,
    commutant_bound,
    epsilon_of_vector,
)
from .decompose import (
    ContourSpec,
    DecomposabilityReport,
    circle_subspace_test,
    closed_form_line_residues,
    common_eigenspace_test,
    common_eigenspace_tuple,
    curve_decomposability_test,
    decompose_pair,
    eigenspace_projection,
    first_moments_check,
    implicit_derivatives,
    inverse_t_operator,
    line_residue_check,
    psi_residue,
    restricted_polynomial,
    t_operator,
    verify_invariant_subspace,
)
from .errors import PencilSpecError
from .exterior import complementary_power, exterior_power, is_generic_multiset
from .gallery import (
    GeneratorSpec,
    bc2_check,
    circle_pair,
    intro_example,
    random_decomposable_pair,
    random_perturbed_pair,
)
from .matrices import EigenDecomposition, commutator_norm, det, eig_hermitian, inverse, perturb
from .pencil import (
    eval_pencil,
    hausdorff_to_line,
    line_containment,
    pencil_polynomial,
    restrict_to_line,
    transform_pencil,
    transform_polynomial,
)
from .polynomials import BivariatePolynomial, Line, PolyDisk
