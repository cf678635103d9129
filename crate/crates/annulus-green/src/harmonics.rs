//! Gegenbauer (ultraspherical) polynomials and zonal spherical harmonics.
//!
//! The Gegenbauer polynomial C_m^λ(t) is the coefficient of r^m in the
//! generating function (1 - 2rt + r²)^{-λ}. The zonal harmonic of degree m
//! on the sphere S^{N-1} is
//!
//! ```text
//!     Z_m(x', y') = ((2m + N - 2) / (N - 2)) · C_m^λ(x'·y'),   λ = (N-2)/2.
//! ```
//!
//! The production path evaluates C_m^λ by the three-term recurrence; the
//! finite explicit sum for Z_m(x, ξ) is kept as an independent cross-check
//! (its alternating factorial terms lose precision for large m), together
//! with an exact-rational expansion of the generating function.

use crate::error::{Error, Result};

/// Parameters of a Gegenbauer evaluation: degree m, weight λ > 0, and an
/// argument t ∈ [-1, 1]. Arguments overshooting ±1 by at most 1e-9 are
/// clamped (dot products of unit vectors round outside [-1, 1]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerParams {
    order: usize,
    lambda: f64,
    argument: f64,
}

impl GegenbauerParams {
    pub fn new(order: usize, lambda: f64, argument: f64) -> Result<Self> {
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
            });
        }
        if !argument.is_finite() || argument.abs() > 1.0 + 1e-9 {
            return Err(Error::InvalidParameter {
                name: "argument",
                value: argument,
            });
        }
        Ok(Self {
            order,
            lambda,
            argument: argument.clamp(-1.0, 1.0),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }
}

/// Surface measure ω_{N-1} = 2 π^{N/2} / Γ(N/2) of the unit sphere of R^N.
pub fn surface_area(dimension: usize) -> Result<f64> {
    if dimension < 3 {
        return Err(Error::DimensionTooSmall(dimension));
    }
    Ok(2.0 * std::f64::consts::PI.powf(dimension as f64 / 2.0) / gamma_half(dimension))
}

/// Γ(n/2) for integer n >= 1, by the recurrence Γ(x+1) = x Γ(x) from the
/// exact anchors Γ(1/2) = √π and Γ(1) = 1.
fn gamma_half(n: usize) -> f64 {
    let mut x;
    let mut g;
    if n.is_multiple_of(2) {
        x = 1.0;
        g = 1.0;
    } else {
        x = 0.5;
        g = std::f64::consts::PI.sqrt();
    }
    while x + 0.5 < n as f64 / 2.0 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Evaluate C_m^λ(t) by the three-term recurrence
///
/// ```text
///     C_0 = 1,  C_1 = 2λt,
///     m C_m = 2t (m + λ - 1) C_{m-1} - (m + 2λ - 2) C_{m-2}.
/// ```
pub fn gegenbauer(params: GegenbauerParams) -> f64 {
    let (lambda, t) = (params.lambda, params.argument);
    match params.order {
        0 => 1.0,
        1 => 2.0 * lambda * t,
        m => {
            let mut c_prev2 = 1.0;
            let mut c_prev = 2.0 * lambda * t;
            let mut c = c_prev;
            for k in 2..=m {
                let kf = k as f64;
                c = (2.0 * t * (kf + lambda - 1.0) * c_prev - (kf + 2.0 * lambda - 2.0) * c_prev2)
                    / kf;
                c_prev2 = c_prev;
                c_prev = c;
            }
            c
        }
    }
}

/// Streaming evaluation of C_0^λ(t), C_1^λ(t), ... via the same recurrence,
/// for series loops that need every degree once.
#[derive(Debug, Clone)]
pub struct GegenbauerSequence {
    lambda: f64,
    t: f64,
    next_order: usize,
    c_prev: f64,
    c_prev2: f64,
}

impl GegenbauerSequence {
    pub fn new(lambda: f64, t: f64) -> Self {
        Self {
            lambda,
            t,
            next_order: 0,
            c_prev: 0.0,
            c_prev2: 0.0,
        }
    }
}

impl Iterator for GegenbauerSequence {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let c = match self.next_order {
            0 => 1.0,
            1 => 2.0 * self.lambda * self.t,
            m => {
                let mf = m as f64;
                (2.0 * self.t * (mf + self.lambda - 1.0) * self.c_prev
                    - (mf + 2.0 * self.lambda - 2.0) * self.c_prev2)
                    / mf
            }
        };
        self.c_prev2 = self.c_prev;
        self.c_prev = c;
        self.next_order += 1;
        Some(c)
    }
}

use crate::domain::UnitDirection;

/// Zonal harmonic Z_m(x', y') of degree m on S^{N-1}, via the Gegenbauer
/// route with λ = (N-2)/2. The dot product is clamped to [-1, 1].
pub fn zonal(
    m: usize,
    dimension: usize,
    x_dir: &UnitDirection,
    y_dir: &UnitDirection,
) -> Result<f64> {
    if dimension < 3 {
        return Err(Error::DimensionTooSmall(dimension));
    }
    if x_dir.dim() != dimension || y_dir.dim() != dimension {
        return Err(Error::DimensionMismatch {
            expected: dimension,
            got: if x_dir.dim() != dimension {
                x_dir.dim()
            } else {
                y_dir.dim()
            },
        });
    }
    let t = x_dir.cos_angle(y_dir);
    let lambda = (dimension as f64 - 2.0) / 2.0;
    let c = gegenbauer(GegenbauerParams::new(m, lambda, t)?);
    Ok(zonal_prefactor(m, dimension) * c)
}

fn zonal_prefactor(m: usize, dimension: usize) -> f64 {
    (2 * m + dimension - 2) as f64 / (dimension - 2) as f64
}

/// Z_m(x, ξ) by the explicit finite sum
///
/// ```text
///     (N + 2m - 2) Σ_{k=0}^{⌊m/2⌋} (-1)^k
///         [N(N+2)···(N+2m-2k-4) / (2^k k! (m-2k)!)] (x·ξ)^{m-2k} |x|^{2k},
/// ```
///
/// valid for any x ∈ R^N. The upper limit is ⌊m/2⌋; indices beyond it
/// would hit a negative factorial argument.
///
/// Cross-check path only, never used in evaluation: the alternating terms
/// grow to ~10^4 times the result by m = 20, so the sum is accumulated in
/// exact rational arithmetic (at the exact f64 values of x·ξ and |x|²) and
/// rounded once at the end.
pub fn zonal_explicit(m: usize, dimension: usize, x: &[f64], xi: &UnitDirection) -> Result<f64> {
    use num::bigint::BigInt;
    use num::rational::BigRational;
    use num::traits::{One, ToPrimitive, Zero};

    if dimension < 2 {
        return Err(Error::DimensionTooSmall(dimension));
    }
    if x.len() != dimension || xi.dim() != dimension {
        return Err(Error::DimensionMismatch {
            expected: dimension,
            got: if x.len() != dimension {
                x.len()
            } else {
                xi.dim()
            },
        });
    }
    if m == 0 {
        return Ok(1.0);
    }
    let x_dot_xi: f64 = x.iter().zip(xi.components()).map(|(a, b)| a * b).sum();
    let x_norm_sq: f64 = x.iter().map(|a| a * a).sum();
    let tau = BigRational::from_float(x_dot_xi).expect("finite dot product");
    let nsq = BigRational::from_float(x_norm_sq).expect("finite norm");

    let rat_pow = |base: &BigRational, exp: usize| -> BigRational {
        let mut out = BigRational::one();
        for _ in 0..exp {
            out *= base;
        }
        out
    };

    let mut sum = BigRational::zero();
    for k in 0..=m / 2 {
        // Product N(N+2)···(N+2m-2k-4); empty when the last factor index
        // falls below the first (then the product is 1).
        let mut numer = BigInt::one();
        let top = 2 * m as i64 - 2 * k as i64 - 4;
        let mut j = 0i64;
        while j <= top {
            numer *= BigInt::from(dimension as i64 + j);
            j += 2;
        }
        let mut denom = BigInt::one();
        for i in 1..=k {
            denom *= BigInt::from(2 * i);
        }
        for i in 1..=(m - 2 * k) {
            denom *= BigInt::from(i);
        }
        if k % 2 == 1 {
            numer = -numer;
        }
        sum += BigRational::new(numer, denom) * rat_pow(&tau, m - 2 * k) * rat_pow(&nsq, k);
    }
    let prefactor = BigInt::from((dimension + 2 * m - 2) as i64);
    Ok((sum * BigRational::from_integer(prefactor))
        .to_f64()
        .expect("value fits in f64"))
}

/// Z_m(ξ, ξ) = ((2m+N-2)/(N-2)) C_m^λ(1), where C_m^λ(1) is the m-th
/// coefficient of (1-r)^{-2λ}, i.e. the rising-factorial ratio (2λ)_m / m!.
/// This is the sharp amplitude bound |Z_m(x', y')| <= Z_m(ξ, ξ) used by
/// truncation control.
pub fn zonal_diagonal(m: usize, dimension: usize) -> Result<f64> {
    if dimension < 3 {
        return Err(Error::DimensionTooSmall(dimension));
    }
    let two_lambda = dimension as f64 - 2.0;
    let mut c_at_one = 1.0;
    for j in 0..m {
        c_at_one *= (two_lambda + j as f64) / (j as f64 + 1.0);
    }
    Ok(zonal_prefactor(m, dimension) * c_at_one)
}

/// Streaming Z_m(ξ, ξ) for m = 0, 1, 2, ...; same values as
/// [`zonal_diagonal`] without recomputing the product from scratch.
#[derive(Debug, Clone)]
pub struct ZonalDiagonalSequence {
    dimension: usize,
    m: usize,
    c_at_one: f64,
}

impl ZonalDiagonalSequence {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            m: 0,
            c_at_one: 1.0,
        }
    }
}

impl Iterator for ZonalDiagonalSequence {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let value = zonal_prefactor(self.m, self.dimension) * self.c_at_one;
        let two_lambda = self.dimension as f64 - 2.0;
        self.c_at_one *= (two_lambda + self.m as f64) / (self.m as f64 + 1.0);
        self.m += 1;
        Some(value)
    }
}

pub mod reference {
    //! Exact-rational reference expansion of the Gegenbauer generating
    //! function. Slow by design; used by the verification harness and the
    //! test suites as ground truth for the double-precision recurrence,
    //! never by any evaluation path.

    use num::bigint::BigInt;
    use num::rational::BigRational;
    use num::traits::{One, Signed, ToPrimitive, Zero};

    /// Coefficients of r^0..r^max_order in (1 - 2rt + r²)^{-λ}, computed by
    /// the generalized binomial series Σ_j (λ)_j/j! · u^j with
    /// u = r(2t - r), powers of u taken by exact polynomial convolution.
    ///
    /// `lambda` must be exactly representable (the half-integers used in
    /// practice are); `t` is taken at its exact f64 value, so the result is
    /// the mathematically exact coefficient sequence for that argument.
    pub fn gegenbauer_series(lambda: f64, t: f64, max_order: usize) -> Vec<f64> {
        let lam = BigRational::from_float(lambda).expect("finite lambda");
        let t = BigRational::from_float(t).expect("finite t");

        // u = 2t r - r², as coefficients of r^1, r^2.
        let u = vec![
            BigRational::zero(),
            BigRational::from_integer(BigInt::from(2)) * &t,
            -BigRational::one(),
        ];

        let mut series = vec![BigRational::zero(); max_order + 1];
        series[0] = BigRational::one();

        // u_pow = u^j truncated at max_order; coef = (λ)_j / j!.
        let mut u_pow = vec![BigRational::one()];
        let mut coef = BigRational::one();
        for j in 1..=max_order {
            u_pow = truncated_product(&u_pow, &u, max_order);
            let jf = BigRational::from_integer(BigInt::from(j));
            coef *= (&lam + BigRational::from_integer(BigInt::from(j as i64 - 1))) / jf;
            for (k, c) in u_pow.iter().enumerate() {
                if !c.is_zero() {
                    series[k] += &coef * c;
                }
            }
        }

        series
            .into_iter()
            .map(|c| c.to_f64().expect("coefficient fits in f64"))
            .collect()
    }

    /// Coefficient of r^m in the formal power series of (1 - 2rt + r²)^{-λ};
    /// the independent oracle for [`super::gegenbauer`].
    pub fn gegenbauer_oracle(m: usize, lambda: f64, t: f64) -> f64 {
        gegenbauer_series(lambda, t, m)[m]
    }

    fn truncated_product(
        p: &[BigRational],
        q: &[BigRational],
        max_order: usize,
    ) -> Vec<BigRational> {
        let len = (p.len() + q.len() - 1).min(max_order + 1);
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in p.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in q.iter().enumerate() {
                if i + j >= len || b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        // Degenerate guard: abs() keeps -0 rationals canonical after the
        // alternating accumulation.
        for c in &mut out {
            if c.is_zero() && c.is_negative() {
                *c = BigRational::zero();
            }
        }
        out
    }
}
