"""Spacelike prescribed-mean-curvature graphs with conelike singularities in
Minkowski 3-space.

The heavy lifting lives in the compiled extension ``conemc._core``: a
pseudo-spectral Cauchy march for the conformal system, radial benchmark
profiles, Gauss-map diagnostics, null-curve extraction with canonical phase
normalization, and Euclidean graph reconstruction.
"""

from conemc._core import (
    SolverError,
    SurfacePatch,
    closed_form_neg_quarter,
    conformality_residual,
    equivariance_error,
    extract_height,
    gauss_pde_residual,
    gaussian_curvature,
    gz_identity,
    integrate_pos_quarter,
    maineq_residual,
    reconstruct,
    round_trip,
    solve,
    surface_csv,
    surface_obj,
    weierstrass_residual,
    __version__,
)

__all__ = [
    "SolverError",
    "SurfacePatch",
    "closed_form_neg_quarter",
    "conformality_residual",
    "equivariance_error",
    "extract_height",
    "gauss_pde_residual",
    "gaussian_curvature",
    "gz_identity",
    "integrate_pos_quarter",
    "maineq_residual",
    "reconstruct",
    "round_trip",
    "solve",
    "surface_csv",
    "surface_obj",
    "weierstrass_residual",
    "__version__",
]
