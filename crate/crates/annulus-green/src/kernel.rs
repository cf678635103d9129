//! Newton-kernel expansions in zonal harmonics and their radial derivatives.
//!
//! For |y| < |x| the kernel expands as
//!
//! ```text
//!     1/|x-y|^{N-2} = Σ_m ((N-2)/(2m+N-2)) |y|^m / |x|^{m+N-2} · Z_m(x', y')
//! ```
//!
//! and symmetrically for |x| < |y|; the two radial-derivative series follow
//! by termwise differentiation in r = |y|. Equal radii fall in neither
//! branch and are rejected: callers that need such points go through the
//! direct kernel instead.

use crate::domain::EvalPoint;
use crate::error::{Error, Result};
use crate::green::h_term_parts;
use crate::harmonics::{surface_area, GegenbauerSequence, ZonalDiagonalSequence};
use crate::series::{sum_adaptive, SeriesValue, TailGeometry, Term, Truncation};

/// Direct evaluation of 1/|x-y|^{N-2}. (The fundamental solution Γ(x-y) is
/// this value divided by ω_{N-1}(N-2).)
pub fn newton_kernel_direct(x: &EvalPoint, y: &EvalPoint, dimension: usize) -> Result<f64> {
    check_pair(x, y, dimension)?;
    let dist = x.distance(y);
    let value = dist.powi(-(dimension as i32 - 2));
    if dist == 0.0 || !value.is_finite() {
        return Err(Error::CoincidentPoints);
    }
    Ok(value)
}

/// Zonal-harmonic expansion of 1/|x-y|^{N-2}, branch chosen by comparing
/// radii. Requires |x| != |y|.
pub fn newton_kernel_series(
    x: &EvalPoint,
    y: &EvalPoint,
    dimension: usize,
    truncation: &Truncation,
) -> Result<SeriesValue> {
    check_pair(x, y, dimension)?;
    let (r_small, r_large) = ordered_radii(x, y)?;
    let n = dimension as f64;
    let ratio = r_small / r_large;
    let scale = r_large.powi(-(dimension as i32 - 2));
    let t = x.direction().cos_angle(y.direction());
    let lambda = (n - 2.0) / 2.0;

    let mut gegenbauer = GegenbauerSequence::new(lambda, t);
    let mut diagonal = ZonalDiagonalSequence::new(dimension);
    let prefactor = |m: usize| (n - 2.0) / (2.0 * m as f64 + n - 2.0);

    Ok(sum_adaptive(
        0,
        truncation,
        TailGeometry {
            ratio,
            growth_degree: dimension as i32 - 2,
        },
        0.0,
        move |m| {
            let c_m = gegenbauer.next().expect("infinite sequence");
            let diag = diagonal.next().expect("infinite sequence");
            let zonal = (2.0 * m as f64 + n - 2.0) / (n - 2.0) * c_m;
            let radial = ratio.powi(m as i32) * scale;
            Term {
                value: prefactor(m) * radial * zonal,
                envelope: prefactor(m) * radial * diag,
            }
        },
    ))
}

/// Termwise radial derivative ∂Γ(y-x)/∂r with r = |y|, including the
/// 1/ω_{N-1} normalization of the fundamental solution. The branch with
/// |y| < |x| starts at an identically-zero m = 0 term; the branch with
/// |x| < |y| starts at -(1/ω_{N-1}) |y|^{-(N-1)}.
pub fn radial_derivative_series(
    x: &EvalPoint,
    y: &EvalPoint,
    dimension: usize,
    truncation: &Truncation,
) -> Result<SeriesValue> {
    check_pair(x, y, dimension)?;
    if x.radius() == y.radius() {
        return Err(Error::EqualRadii(x.radius()));
    }
    let n = dimension as f64;
    let omega = surface_area(dimension)?;
    let (rho, r) = (x.radius(), y.radius());
    let t = x.direction().cos_angle(y.direction());
    let lambda = (n - 2.0) / 2.0;

    let mut gegenbauer = GegenbauerSequence::new(lambda, t);
    let mut diagonal = ZonalDiagonalSequence::new(dimension);

    let inner_branch = r < rho;
    let (ratio, scale) = if inner_branch {
        // (m/(2m+N-2)) r^{m-1} / ρ^{m+N-2} = (m/(2m+N-2)) (r/ρ)^{m-1} ρ^{1-N}
        (r / rho, rho.powi(1 - dimension as i32))
    } else {
        // -((m+N-2)/(2m+N-2)) ρ^m / r^{m+N-1} = -(...) (ρ/r)^m r^{1-N}
        (rho / r, r.powi(1 - dimension as i32))
    };

    Ok(sum_adaptive(
        0,
        truncation,
        TailGeometry {
            ratio,
            growth_degree: dimension as i32 - 1,
        },
        0.0,
        move |m| {
            let c_m = gegenbauer.next().expect("infinite sequence");
            let diag = diagonal.next().expect("infinite sequence");
            let mf = m as f64;
            let zonal = (2.0 * mf + n - 2.0) / (n - 2.0) * c_m;
            let (coef, radial) = if inner_branch {
                (
                    mf / (2.0 * mf + n - 2.0),
                    if m == 0 {
                        0.0
                    } else {
                        ratio.powi(m as i32 - 1) * scale
                    },
                )
            } else {
                (
                    -(mf + n - 2.0) / (2.0 * mf + n - 2.0),
                    ratio.powi(m as i32) * scale,
                )
            };
            Term {
                value: coef / omega * radial * zonal,
                envelope: coef.abs() / omega * radial * diag,
            }
        },
    ))
}

/// Envelope bound and tail geometry for one order of the regular-part
/// series at radii (ρ, r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationBound {
    /// (|A_m(ρ)| r^m + |B_m(ρ)| r^{-(m+N-2)}) · Z_m(ξ,ξ) / ω_{N-1}; bounds
    /// the magnitude of the m-th term uniformly over directions.
    pub envelope: f64,
    /// Geometric decay ratio q = max(ρr, a²/(ρr)); the series carries a
    /// convergence certificate only when q < 1.
    pub ratio: f64,
}

impl TruncationBound {
    /// True when the geometric tail estimate is trustworthy (q < 1).
    /// Evaluation may still proceed at fixed order without a certificate,
    /// with the tail estimate marked unreliable.
    pub fn is_certified(&self) -> bool {
        self.ratio < 1.0
    }
}

/// Envelope for the m-th term of the regular-part series; see
/// [`TruncationBound`]. Requires m >= 1 (the m = 0 sector is the closed-form
/// C_0 term, handled separately).
pub fn truncation_bound(
    m: usize,
    rho: f64,
    r: f64,
    inner_radius: f64,
    dimension: usize,
) -> Result<TruncationBound> {
    if m == 0 {
        return Err(Error::InvalidParameter {
            name: "m",
            value: 0.0,
        });
    }
    if dimension < 3 {
        return Err(Error::DimensionTooSmall(dimension));
    }
    for (name, v) in [("rho", rho), ("r", r)] {
        if !(v >= inner_radius && v <= 1.0) {
            return Err(Error::OutsideAnnulus {
                radius: v,
                inner: inner_radius,
            });
        }
        let _ = name;
    }
    let omega = surface_area(dimension)?;
    let diag = crate::harmonics::zonal_diagonal(m, dimension)?;
    let (a_part, b_part) = h_term_parts(m, dimension, inner_radius, rho, r);
    // A_m and B_m are negative throughout the annulus, so the two pieces
    // share a sign and the absolute envelope is just the magnitude sum.
    let envelope = (a_part.abs() + b_part.abs()) * diag / omega;
    let q = (rho * r).max(inner_radius * inner_radius / (rho * r));
    Ok(TruncationBound { envelope, ratio: q })
}

pub(crate) fn tail_geometry_for_regular_part(
    rho: f64,
    r: f64,
    inner_radius: f64,
    dimension: usize,
) -> TailGeometry {
    TailGeometry {
        ratio: (rho * r).max(inner_radius * inner_radius / (rho * r)),
        growth_degree: dimension as i32 - 2,
    }
}

fn check_pair(x: &EvalPoint, y: &EvalPoint, dimension: usize) -> Result<()> {
    if dimension < 3 {
        return Err(Error::DimensionTooSmall(dimension));
    }
    for p in [x, y] {
        if p.dim() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                got: p.dim(),
            });
        }
    }
    Ok(())
}

fn ordered_radii(x: &EvalPoint, y: &EvalPoint) -> Result<(f64, f64)> {
    if x.radius() == y.radius() {
        return Err(Error::EqualRadii(x.radius()));
    }
    Ok(if x.radius() < y.radius() {
        (x.radius(), y.radius())
    } else {
        (y.radius(), x.radius())
    })
}
