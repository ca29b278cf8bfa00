"""Spectra of two- and three-dimensional Schrödinger operators with point interactions.

The package computes boundary-triplet Weyl matrices for finitely many point
interactions, locates the negative eigenvalues of any self-adjoint extension,
counts them at zero energy, certifies the absolutely continuous band, and
ships a toolkit for radial positive definite functions.
"""
from .config import (
    Diagonal,
    Hermitian,
    PointConfiguration,
    Relation,
    aghh_coefficient_matrix,
    boundary_maps,
    build_configuration,
    coefficients_from_boundary,
    extension_from_nonneg_family,
    interaction_matrices,
    nonneg_family_bprime,
)
from .exceptions import DomainError, InvariantError, PointIntError, PreconditionError, SingularityError
from .radialpd import (
    DiscreteMeasure,
    PointSet,
    RadialFunction,
    catalog_function,
    catalog_membership,
    gram_matrix,
    pd_violation_search,
    schoenberg_synthesize,
    strict_pd_check,
)
from .spectral import (
    ac_certification,
    count_negative,
    eigenfunction_eval,
    is_nonnegative,
    negative_eigenvalues,
    spectrum,
)
from .specfun import SpectralPoint, bessel_j0, bessel_k0, hankel0_first, omega_kernel, sqrt_branch
from .weyl import (
    gamma_field_eval,
    tilde_weyl_zero,
    weyl_boundary,
    weyl_imag_boundary,
    weyl_matrix,
    weyl_zero,
)

__version__ = "0.1.0"
