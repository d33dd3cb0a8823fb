"""fourierpos: necessary-condition tests for nonnegativity of the 1D
Fourier-cosine or 2D Fourier-Bessel transform of Gaussian-polynomial
functions, using only the function itself (never its transform):
Toeplitz/Bochner matrix scans and analytic-continuation Jensen bounds.
"""

from ._kernels import BACKEND, HAVE_COMPILED
from .algebra import (
    AssociateSet,
    BasisMix,
    GaussPoly,
    basis_function,
    convolve_gauss,
    derivative_2q,
    exact_transform,
    is_nonneg,
    mix,
)
from .analytic import cosh_bound, cosh_cos_bounds, i0_bound, multicomponent_bound, omega8_bounds
from .bessel import bessel_i0, bessel_j0, convolve_gauss_2d, hankel_transform, radial_laplacian
from .criteria import build_associates, maximality_test, run_checklist
from .experiments import (
    ExperimentStats,
    figure1_case,
    grid_census_3param,
    random_census_1d,
    random_census_2d,
)
from .moments import moment_report, mu0, mu1_closed_form, mu1_r_space
from .toeplitz import min_eigenvalue, toeplitz_matrix, toeplitz_scan

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HAVE_COMPILED",
    "AssociateSet",
    "BasisMix",
    "ExperimentStats",
    "GaussPoly",
    "basis_function",
    "bessel_i0",
    "bessel_j0",
    "build_associates",
    "convolve_gauss",
    "convolve_gauss_2d",
    "cosh_bound",
    "cosh_cos_bounds",
    "derivative_2q",
    "exact_transform",
    "figure1_case",
    "grid_census_3param",
    "hankel_transform",
    "i0_bound",
    "is_nonneg",
    "maximality_test",
    "min_eigenvalue",
    "mix",
    "moment_report",
    "mu0",
    "mu1_closed_form",
    "mu1_r_space",
    "multicomponent_bound",
    "omega8_bounds",
    "radial_laplacian",
    "random_census_1d",
    "random_census_2d",
    "run_checklist",
    "toeplitz_matrix",
    "toeplitz_scan",
]
