"""Numerical laboratory for the generalized surface quasi-geostrophic family.

Pseudo-spectral simulation of the alpha-parametrized inviscid transport
dynamics, continuity-in-alpha convergence measurements, and quadrature-based
verification of the singular-integral, Littlewood-Paley, and comparison
estimates that control the parameter dependence.
"""

from .grid import (
    Grid2D,
    MultiplierSpec,
    RealField,
    SpectralField,
    apply_multiplier,
    fft_forward,
    fft_inverse,
    make_grid,
)
from .operators import (
    RieszParams,
    bessel_potential,
    biot_savart,
    divergence,
    fractional_laplacian,
    gradient,
    homogeneous_sobolev_norm,
    lp_norm,
    riesz_potential,
    sobolev_norm,
    spectral_product,
)
from .littlewood_paley import (
    BesovIndex,
    DyadicPartition,
    bernstein_check,
    besov_norm,
    bony_decompose,
    build_partition,
    lp_block,
    lp_decompose,
    low_pass,
    verify_embedding_D1,
)
from .solver import (
    Diagnostics,
    Snapshot,
    SolverConfig,
    SolverState,
    Trajectory,
    cfl_dt,
    load_snapshot,
    rhs,
    run,
    save_snapshot,
    step_rk4,
)
from .experiments import (
    ConvergenceConfig,
    ODEComparisonSpec,
    RateFit,
    compute_u_bar_parts,
    convergence_study,
    fit_rate,
    difference_bound_model,
    verify_commutator_kpv,
    verify_hls,
    verify_ode_comparison,
    verify_prop41,
    verify_prop42,
)
from .kernels import (
    KernelSplitParams,
    QuadratureMesh,
    TestFunction,
    beta_from_alpha,
    convolve_T,
    convolve_T1,
    convolve_T2,
    fourier_K1,
    verify_K1_uniform,
    verify_T1_bound,
    verify_T2_Hs_bound,
    verify_T2_L2_bound,
)
from .report import InequalityReport

__version__ = "0.1.0"
