"""Evans functions, determinants, pencils and spectral flow for Schrodinger operators."""

from ._evanskit import (
    Error,
    NumericalError,
    Problem,
    SpectrumError,
    count_eigs,
    d_k,
    det_n_theta,
    det_p,
    dirichlet_eigenvalue,
    evans_maslov_check,
    kernel_dim_at,
    mode_dirichlet_eigenvalues,
    multiplicity_at,
    pencil_multiplicity,
    run,
    schatten_diag,
    souriau,
    spectral_flow,
)

__all__ = [
    "Error",
    "NumericalError",
    "Problem",
    "SpectrumError",
    "count_eigs",
    "d_k",
    "det_n_theta",
    "det_p",
    "dirichlet_eigenvalue",
    "evans_maslov_check",
    "kernel_dim_at",
    "mode_dirichlet_eigenvalues",
    "multiplicity_at",
    "pencil_multiplicity",
    "run",
    "schatten_diag",
    "souriau",
    "spectral_flow",
]
