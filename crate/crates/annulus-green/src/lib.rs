//! Neumann Green function of the N-dimensional annulus (N >= 3).
//!
//! The library evaluates the Green function of -Δ on
//! Ω_a = { x ∈ R^N : a < |x| < 1 } under the constant Neumann flux
//! condition ∂G/∂ν = -1/|∂Ω_a|, through an explicit zonal-harmonic /
//! Gegenbauer series for the regular part; alongside it ships the tooling
//! to verify that construction numerically: independent coefficient
//! oracles, finite-difference Laplacians, flux probes, annulus quadrature,
//! and a machine-readable verification report.
//!
//! Entry points:
//! - [`green`], [`regular_part`], [`robin`]: the main kernels.
//! - [`coeff_a`], [`coeff_b`], [`coeff_c0`], [`coeffs_via_cramer`]: series
//!   coefficients through two routes.
//! - [`newton_kernel_series`], [`radial_derivative_series`]: the underlying
//!   expansions of the Newton kernel.
//! - [`verify::run_full_verification`]: every check in one report.
//!
//! The `examples/` directory demonstrates each capability end to end; the
//! `annulus-green` binary exposes the same operations as subcommands.

pub mod cli;
pub mod domain;
pub mod error;
pub mod green;
pub mod harmonics;
pub mod kernel;
pub mod quadrature;
pub mod series;
pub mod tolerances;
pub mod verify;

pub use domain::{Annulus, BoundaryComponent, EvalPoint, UnitDirection};
pub use error::{Error, Result};
pub use green::{
    coeff_a, coeff_b, coeff_c0, coefficient_rows, coeffs_via_cramer, green, mean_over_y,
    normal_derivative_in_y, regular_part, robin, symmetry_defect, CoefficientRow, GreenEvaluation,
    MeanEstimate, SymmetryDefect,
};
pub use harmonics::{
    gegenbauer, surface_area, zonal, zonal_diagonal, zonal_explicit, GegenbauerParams,
};
pub use kernel::{
    newton_kernel_direct, newton_kernel_series, radial_derivative_series, truncation_bound,
    TruncationBound,
};
pub use quadrature::{
    annulus_integral, annulus_integral_singular, IntegralEstimate, QuadratureSpec, SingularitySpec,
};
pub use series::{SeriesValue, Truncation};
pub use verify::{
    boundary_scan, fd_laplacian, flux_probe, run_full_verification, CheckResult, CheckStatus,
    VerificationReport,
};
