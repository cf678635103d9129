//! Independent numerical oracles and the aggregate verification report.
//!
//! Everything here double-checks the series construction through routes
//! that do not share code with it: exact-rational polynomial expansion,
//! finite differences, quadrature, and small-sphere flux probes. Results
//! come back as named [`CheckResult`]s with explicit tolerances — no check
//! asserts without one — collected into a [`VerificationReport`] that
//! serializes to JSON and is byte-identical for a fixed seed, including
//! under parallel execution (checks are keyed by name and sorted).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{Annulus, EvalPoint, UnitDirection};
use crate::error::{Error, Result};
use crate::green::{
    coeff_a, coeff_b, coeff_c0, coeffs_via_cramer, green_with_c0, mean_over_y,
    normal_derivative_in_y_with_c0, regular_part, regular_part_with_c0, robin,
};
use crate::harmonics::{
    gegenbauer, reference, surface_area, zonal, zonal_diagonal, zonal_explicit, GegenbauerParams,
};
use crate::kernel::{newton_kernel_direct, newton_kernel_series, radial_derivative_series};
use crate::quadrature::{annulus_integral, sphere_directions, QuadratureSpec};
use crate::series::Truncation;
use crate::tolerances as tol;

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Reported without being asserted: informational measurements,
    /// near-boundary scans without an error model, and checks whose hard
    /// tolerance was relaxed by the conditioning policy.
    Flagged,
}

/// One verification entry: what was targeted, what was measured, the
/// tolerance it was judged against, and how it went.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub target: f64,
    pub measured: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
    pub notes: String,
}

impl CheckResult {
    /// Pass/fail by |measured - target| <= tolerance.
    pub fn judged(name: &str, target: f64, measured: f64, tolerance: f64, notes: &str) -> Self {
        let status = if (measured - target).abs() <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name: name.to_string(),
            target,
            measured,
            tolerance,
            status,
            notes: notes.to_string(),
        }
    }

    /// Same comparison, downgraded to flagged-not-failed when outside.
    pub fn reported(name: &str, target: f64, measured: f64, tolerance: f64, notes: &str) -> Self {
        let mut check = Self::judged(name, target, measured, tolerance, notes);
        if check.status == CheckStatus::Fail {
            check.status = CheckStatus::Flagged;
        }
        check
    }

    /// Apply the conditioning policy: outside the recommended inner-radius
    /// range the hard tolerance relaxes by `factor` and a pass against the
    /// relaxed threshold is only flagged.
    fn relaxed(mut self, factor: f64) -> Self {
        if factor > 1.0 {
            if self.status == CheckStatus::Fail
                && (self.measured - self.target).abs() <= self.tolerance * factor
            {
                self.status = CheckStatus::Flagged;
            }
            self.notes = format!(
                "{} [tolerance relaxed x{factor:.1}: inner radius beyond recommended range]",
                self.notes
            );
        }
        self
    }
}

/// Aggregate outcome of [`run_full_verification`]; deterministic for a
/// fixed seed, with checks sorted by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub dimension: usize,
    pub inner_radius: f64,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub flagged: usize,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    fn from_checks(dom: &Annulus, seed: u64, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let count = |s: CheckStatus| checks.iter().filter(|c| c.status == s).count();
        Self {
            dimension: dom.dimension(),
            inner_radius: dom.inner_radius(),
            seed,
            passed: count(CheckStatus::Pass),
            failed: count(CheckStatus::Fail),
            flagged: count(CheckStatus::Flagged),
            checks,
        }
    }

    pub fn has_hard_failures(&self) -> bool {
        self.failed > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Knobs for [`run_full_verification_with`]; the plain entry point uses
/// defaults plus the caller's quadrature budget and truncation.
#[derive(Debug, Clone, Default)]
pub struct VerificationOptions {
    pub quadrature: QuadratureSpec,
    pub truncation: Truncation,
    /// Test hook: run the suite against a sign-flipped C_0 to demonstrate
    /// that the boundary checks actually catch a wrong constant.
    pub fault_c0_sign_flip: bool,
}

/// Second-order (2N+1)-point finite-difference Laplacian
/// Σ_i (f(p+h e_i) + f(p-h e_i) - 2 f(p)) / h² of a scalar field.
/// The stencil ball must stay inside the annulus.
pub fn fd_laplacian<F: Fn(&[f64]) -> f64>(
    field: F,
    p: &EvalPoint,
    h: f64,
    dom: &Annulus,
) -> Result<f64> {
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::InvalidParameter {
            name: "h",
            value: h,
        });
    }
    if p.radius() - h < dom.inner_radius() || p.radius() + h > 1.0 {
        return Err(Error::Geometry(format!(
            "stencil of radius {h} around |p| = {} leaves the annulus",
            p.radius()
        )));
    }
    let center = field(p.coordinates());
    let mut sum = 0.0;
    let mut shifted = p.coordinates().to_vec();
    for i in 0..p.dim() {
        shifted[i] = p.coordinates()[i] + h;
        let plus = field(&shifted);
        shifted[i] = p.coordinates()[i] - h;
        let minus = field(&shifted);
        shifted[i] = p.coordinates()[i];
        sum += plus + minus - 2.0 * center;
    }
    Ok(sum / (h * h))
}

/// Outward flux of the gradient of `field` through the sphere of radius
/// `eps` around `center`, with the normal derivative taken by centered
/// differences at step eps·1e-3. For the Green function the target is -1.
///
/// Directions are used in antithetic ±d pairs: odd direction-moments of a
/// smooth gradient cancel exactly, so the sampling error is set by the
/// (zero-trace) Hessian term rather than the gradient itself.
pub fn flux_probe_field<F: Fn(&EvalPoint) -> Result<f64>>(
    field: F,
    center: &EvalPoint,
    dom: &Annulus,
    eps: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let delta = eps * tol::FLUX_GRADIENT_STEP_FACTOR;
    if center.radius() - (eps + delta) < dom.inner_radius() || center.radius() + (eps + delta) > 1.0
    {
        return Err(Error::Geometry(format!(
            "probe ball of radius {eps} around |x| = {} leaves the annulus",
            center.radius()
        )));
    }
    let n = dom.dimension();
    let pairs = (spec.sphere_samples() / 2).max(16);
    let dirs = sphere_directions(n, pairs, spec.monte_carlo_seed());
    let mut mean = crate::series::KahanSum::new(0.0);
    let mut offset = vec![0.0; n];
    for dir in &dirs {
        for orientation in [1.0, -1.0] {
            let mut at = |radius: f64| -> Result<f64> {
                for ((o, c), d) in offset
                    .iter_mut()
                    .zip(center.coordinates())
                    .zip(dir.components())
                {
                    *o = c + orientation * radius * d;
                }
                field(&EvalPoint::new(&offset)?)
            };
            let outward = (at(eps + delta)? - at(eps - delta)?) / (2.0 * delta);
            mean.add(outward);
        }
    }
    let sphere_measure = dom.sphere_area() * eps.powi(n as i32 - 1);
    Ok(sphere_measure * mean.value() / (2 * pairs) as f64)
}

/// Flux probe of the Green function itself: recovers the Dirac mass -1.
pub fn flux_probe(
    x: &EvalPoint,
    dom: &Annulus,
    eps: f64,
    spec: &QuadratureSpec,
    truncation: &Truncation,
) -> Result<f64> {
    flux_probe_field(
        |y| Ok(crate::green::green(x, y, dom, truncation)?.green),
        x,
        dom,
        eps,
        spec,
    )
}

/// Scan the constructed Neumann condition over both boundary spheres for a
/// fixed interior source x: ∂G/∂ν_y should equal -1/|∂Ω| everywhere.
/// Directions angularly separated from x' by at least the hard-check cone
/// are asserted; closer ones (where the series convergence degrades as x
/// nears the boundary) are reported as flagged. The x-variable counterpart
/// (one-sided differences of G in the radius of a boundary source) is
/// reported but never asserted.
pub fn boundary_scan(
    x: &EvalPoint,
    dom: &Annulus,
    samples: usize,
    truncation: &Truncation,
) -> Result<VerificationReport> {
    boundary_scan_with_c0(x, dom, samples, truncation, coeff_c0(dom), 0)
}

fn boundary_scan_with_c0(
    x: &EvalPoint,
    dom: &Annulus,
    samples: usize,
    truncation: &Truncation,
    c0: f64,
    seed: u64,
) -> Result<VerificationReport> {
    dom.check_point(x)?;
    let n = dom.dimension();
    let target = -1.0 / dom.boundary_measure();
    let relax = tol::conditioning_relaxation(dom.inner_radius());
    let dirs = sphere_directions(n, samples, seed.wrapping_add(0x5ca9));
    let mut checks = Vec::new();

    for (component, radius) in [("outer", 1.0), ("inner", dom.inner_radius())] {
        let mut hard_max = 0.0f64;
        let mut hard_sum = 0.0;
        let mut hard_count = 0usize;
        let mut cone_max = 0.0f64;
        for dir in &dirs {
            let y = EvalPoint::from_polar(radius, dir)?;
            let d = normal_derivative_in_y_with_c0(x, &y, dom, truncation, c0)?;
            let residual = (d.value - target).abs();
            let angle = x.direction().cos_angle(dir).acos();
            if angle >= tol::NEUMANN_MIN_ANGLE {
                hard_max = hard_max.max(residual);
                hard_sum += residual;
                hard_count += 1;
            } else {
                cone_max = cone_max.max(residual);
            }
        }
        checks.push(
            CheckResult::judged(
                &format!("boundary/{component}_max_residual"),
                0.0,
                hard_max,
                tol::NEUMANN_RESIDUAL_ABS,
                &format!(
                    "max |dG/dnu + 1/|dOmega|| over {hard_count} directions with angle >= {}",
                    tol::NEUMANN_MIN_ANGLE
                ),
            )
            .relaxed(relax),
        );
        checks.push(
            CheckResult::judged(
                &format!("boundary/{component}_mean_residual"),
                0.0,
                hard_sum / hard_count.max(1) as f64,
                tol::NEUMANN_RESIDUAL_ABS,
                "mean residual over the hard-check directions",
            )
            .relaxed(relax),
        );
        checks.push(CheckResult::reported(
            &format!("boundary/{component}_near_cone_residual"),
            0.0,
            cone_max,
            tol::NEUMANN_RESIDUAL_ABS,
            "directions within the cone around x'; convergence-region degradation, flagged not failed",
        ));
    }

    // x-variable counterpart: reported, not asserted. One-sided second-order
    // radial differences of G(x_b, y) at boundary x_b, fixed interior y = x.
    let h = 1e-4;
    let mut x_max = 0.0f64;
    for dir in dirs.iter().take(samples.min(64)) {
        for outer in [true, false] {
            let g_at = |r: f64| -> Result<f64> {
                let xb = EvalPoint::from_polar(r, dir)?;
                Ok(green_with_c0(&xb, x, dom, truncation, c0)?.green)
            };
            let d_r = if outer {
                (3.0 * g_at(1.0)? - 4.0 * g_at(1.0 - h)? + g_at(1.0 - 2.0 * h)?) / (2.0 * h)
            } else {
                let a = dom.inner_radius();
                -(3.0 * g_at(a)? - 4.0 * g_at(a + h)? + g_at(a + 2.0 * h)?) / (2.0 * h)
            };
            let d_nu = if outer { d_r } else { -d_r };
            x_max = x_max.max((d_nu - target).abs());
        }
    }
    checks.push(CheckResult::reported(
        "boundary/x_variable_max_residual",
        0.0,
        x_max,
        tol::NEUMANN_RESIDUAL_ABS,
        "Neumann condition in the x variable, one-sided FD; measured and reported only",
    ));

    Ok(VerificationReport::from_checks(dom, seed, checks))
}

/// Gram–Schmidt orthonormalization of a random Gaussian matrix: a Haar-ish
/// random rotation for invariance checks.
pub(crate) fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    loop {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
        'outer: for _ in 0..n {
            let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            for b in &basis {
                let proj: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
            let norm: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm < 1e-6 {
                break 'outer; // degenerate draw; retry the whole matrix
            }
            for vi in &mut v {
                *vi /= norm;
            }
            basis.push(v);
        }
        if basis.len() == n {
            return basis;
        }
    }
}

pub(crate) fn apply_matrix(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn random_direction(n: usize, rng: &mut ChaCha8Rng) -> UnitDirection {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(dir) = UnitDirection::new(&v) {
            return dir;
        }
    }
}

fn random_interior_point(dom: &Annulus, margin: f64, rng: &mut ChaCha8Rng) -> EvalPoint {
    // Thin shells (large a) cannot afford the standard margins; never eat
    // more than half the gap from the two sides combined.
    let margin = margin.min(0.25 * (1.0 - dom.inner_radius()));
    let lo = dom.inner_radius() + margin;
    let hi = 1.0 - margin;
    let radius = lo + (hi - lo) * rng.random::<f64>();
    EvalPoint::from_polar(radius, &random_direction(dom.dimension(), rng)).expect("radius > 0")
}

/// Scaled difference |a - b| / max(1, |b|): relative against the reference
/// where the reference is large, absolute where it is small.
pub(crate) fn scaled_error(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(1.0)
}

/// Run every invariant suite over a seeded point set and collect the
/// aggregate report. Deterministic for a fixed seed; checks execute in
/// parallel and are reassembled in name order.
pub fn run_full_verification(
    dom: &Annulus,
    budget: &QuadratureSpec,
    truncation: &Truncation,
) -> VerificationReport {
    run_full_verification_with(
        dom,
        &VerificationOptions {
            quadrature: *budget,
            truncation: *truncation,
            fault_c0_sign_flip: false,
        },
    )
}

pub fn run_full_verification_with(
    dom: &Annulus,
    options: &VerificationOptions,
) -> VerificationReport {
    let seed = options.quadrature.monte_carlo_seed();
    let dom = *dom;

    // One entry per check family; each parallel task gets its own copy of
    // the options and a seed offset of its own, so the report is identical
    // regardless of scheduling.
    let mut checks: Vec<CheckResult> = (0..18usize)
        .into_par_iter()
        .flat_map(|job| {
            let o = options.clone();
            match job {
                0 => check_gegenbauer_oracle(seed),
                1 => check_generating_function(seed),
                2 => check_zonal_rotation_invariance(seed),
                3 => check_zonal_explicit_equivalence(seed),
                4 => check_zonal_sphere_average(&dom, seed),
                5 => check_newton_series(&o, seed),
                6 => check_radial_derivative(seed),
                7 => check_swap_symmetry(seed),
                8 => check_tail_coverage(&dom, seed),
                9 => check_coefficient_double_entry(),
                10 => check_boundary_system_residuals(),
                11 => check_neumann_condition(&dom, &o, seed),
                12 => check_harmonicity(&dom, &o, seed),
                13 => check_dirac_flux(&dom, &o, seed),
                14 => check_exchange_identity(&dom, &o, seed),
                15 => check_mean_over_y(&dom, &o, seed),
                16 => check_quadrature_identities(&dom, &o, seed),
                _ => check_green_parts_identity(&dom, &o, seed),
            }
        })
        .collect();

    if !dom.is_well_conditioned() {
        checks.push(CheckResult::reported(
            "conditioning/inner_radius",
            crate::domain::WELL_CONDITIONED_INNER_RADIUS,
            dom.inner_radius(),
            0.0,
            "inner radius beyond the recommended range; coefficient denominators are ill-conditioned and hard tolerances were relaxed",
        ));
    }

    VerificationReport::from_checks(&dom, seed, checks)
}

fn effective_c0(dom: &Annulus, options: &VerificationOptions) -> f64 {
    if options.fault_c0_sign_flip {
        -coeff_c0(dom)
    } else {
        coeff_c0(dom)
    }
}

fn check_gegenbauer_oracle(_seed: u64) -> Vec<CheckResult> {
    let lambdas = [0.5, 1.0, 1.5, 2.5];
    let grid: Vec<f64> = (0..41).map(|i| (i as f64 - 20.0) / 20.0).collect();
    let worst = lambdas
        .par_iter()
        .flat_map(|&lambda| grid.par_iter().map(move |&t| (lambda, t)))
        .map(|(lambda, t)| {
            let series = reference::gegenbauer_series(lambda, t, tol::GEGENBAUER_ORACLE_MAX_ORDER);
            series
                .iter()
                .enumerate()
                .map(|(m, oracle)| {
                    let value =
                        gegenbauer(GegenbauerParams::new(m, lambda, t).expect("valid params"));
                    scaled_error(value, *oracle)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    vec![CheckResult::judged(
        "harmonics/gegenbauer_recurrence_vs_oracle",
        0.0,
        worst,
        tol::GEGENBAUER_ORACLE_REL,
        "recurrence vs exact-rational generating-function expansion, m <= 60, lambda in {1/2,1,3/2,5/2}, 41-point t grid",
    )]
}

fn check_generating_function(_seed: u64) -> Vec<CheckResult> {
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5] {
        let lambda = (n as f64 - 2.0) / 2.0;
        for t in [-1.0, -0.6, -0.1, 0.4, 0.9, 1.0] {
            for r in [0.1f64, 0.5, 0.9] {
                let closed = (1.0 - 2.0 * r * t + r * r).powf(-lambda);
                let mut sum = crate::series::KahanSum::new(0.0);
                let mut streak = 0;
                for (m, c) in crate::harmonics::GegenbauerSequence::new(lambda, t)
                    .take(4000)
                    .enumerate()
                {
                    let term = c * r.powi(m as i32);
                    sum.add(term);
                    // |C_m(t)| <= C_m(1), so the discarded tail is below
                    // bound·r^m/(1-r) up to slow polynomial growth; cut when
                    // that is safely under the absolute target.
                    let diag_bound = zonal_diagonal(m, n).expect("n >= 3") * (n as f64 - 2.0)
                        / (2.0 * m as f64 + n as f64 - 2.0);
                    if diag_bound * r.powi(m as i32) / (1.0 - r) < 1e-12 {
                        streak += 1;
                        if streak >= 3 {
                            break;
                        }
                    } else {
                        streak = 0;
                    }
                }
                worst = worst.max((sum.value() - closed).abs());
            }
        }
    }
    vec![CheckResult::judged(
        "harmonics/generating_function_partial_sums",
        0.0,
        worst,
        tol::GENERATING_FUNCTION_ABS,
        "partial sums of sum C_m r^m against (1-2rt+r^2)^{-lambda}, r in {0.1,0.5,0.9}",
    )]
}

fn check_zonal_rotation_invariance(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(11));
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5] {
        for _ in 0..20 {
            let x = random_direction(n, &mut rng);
            let y = random_direction(n, &mut rng);
            let rot = random_orthogonal(n, &mut rng);
            let rx = UnitDirection::new(&apply_matrix(&rot, x.components())).expect("unit");
            let ry = UnitDirection::new(&apply_matrix(&rot, y.components())).expect("unit");
            for m in [1usize, 3, 8, 15] {
                let plain = zonal(m, n, &x, &y).expect("valid");
                let rotated = zonal(m, n, &rx, &ry).expect("valid");
                // The rotated dot product differs by O(ε) and the
                // polynomial amplifies that by |C'_m|; the natural scale
                // for the comparison is the kernel amplitude Z_m(ξ,ξ).
                let amplitude = zonal_diagonal(m, n).expect("n >= 3");
                worst = worst.max((rotated - plain).abs() / amplitude);
            }
        }
    }
    vec![CheckResult::judged(
        "harmonics/zonal_rotation_invariance",
        0.0,
        worst,
        tol::ROTATION_INVARIANCE_REL,
        "Z_m under joint random rotations depends only on the dot product; difference scaled by the amplitude Z_m(xi,xi)",
    )]
}

fn check_zonal_explicit_equivalence(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(12));
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5] {
        for _ in 0..10 {
            let x = random_direction(n, &mut rng);
            let xi = random_direction(n, &mut rng);
            for m in 0..=tol::ZONAL_EXPLICIT_MAX_ORDER {
                let explicit = zonal_explicit(m, n, x.components(), &xi).expect("valid");
                let theorem = zonal(m, n, &x, &xi).expect("valid");
                worst = worst.max(scaled_error(explicit, theorem));
            }
        }
    }
    vec![CheckResult::judged(
        "harmonics/zonal_explicit_equivalence",
        0.0,
        worst,
        tol::ZONAL_EXPLICIT_REL,
        "explicit finite sum vs Gegenbauer route on the unit sphere, m <= 20, N in {3,4,5}",
    )]
}

fn check_zonal_sphere_average(dom: &Annulus, seed: u64) -> Vec<CheckResult> {
    let n = dom.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(13));
    let x = random_direction(n, &mut rng);
    let samples = 20_000usize;
    let mut worst_sigmas = 0.0f64;
    for m in [1usize, 2, 5] {
        let mut mean = crate::series::KahanSum::new(0.0);
        for _ in 0..samples {
            let y = random_direction(n, &mut rng);
            mean.add(zonal(m, n, &x, &y).expect("valid"));
        }
        let mean = mean.value() / samples as f64;
        // Var(Z_m) over uniform directions equals Z_m(xi, xi).
        let std_error = (zonal_diagonal(m, n).expect("n >= 3") / samples as f64).sqrt();
        worst_sigmas = worst_sigmas.max(mean.abs() / std_error);
    }
    vec![CheckResult::judged(
        "harmonics/zonal_sphere_average",
        0.0,
        worst_sigmas,
        tol::SPHERE_AVERAGE_SIGMAS,
        "Monte Carlo sphere average of Z_m for m >= 1, in standard errors",
    )]
}

fn check_newton_series(options: &VerificationOptions, seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(21));
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5, 7] {
        for a in [0.3, 0.5] {
            let dom = Annulus::new(n, a).unwrap();
            for _ in 0..10 {
                let x = random_interior_point(&dom, 0.0, &mut rng);
                // Partner radius at ratio <= 0.8.
                let ratio = 0.2 + 0.6 * rng.random::<f64>();
                let r_small = (x.radius() * ratio).max(a);
                if r_small / x.radius() > 0.8 {
                    continue;
                }
                let y = EvalPoint::from_polar(r_small, &random_direction(n, &mut rng)).unwrap();
                let direct = newton_kernel_direct(&x, &y, n).expect("distinct");
                let series = newton_kernel_series(&x, &y, n, &options.truncation).expect("branch");
                worst = worst.max((series.value - direct).abs() / direct);
            }
        }
    }
    vec![CheckResult::judged(
        "kernel/newton_series_vs_direct",
        0.0,
        worst,
        tol::KERNEL_SERIES_REL,
        "zonal expansion vs direct kernel, radius ratio <= 0.8, N in {3,4,5,7}",
    )]
}

fn check_radial_derivative(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(22));
    let truncation = Truncation::new(400, 1e-12, true).unwrap();
    let h = tol::RADIAL_DERIVATIVE_FD_STEP;
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5] {
        let omega = surface_area(n).unwrap();
        for _ in 0..8 {
            let x = EvalPoint::from_polar(
                0.55 + 0.35 * rng.random::<f64>(),
                &random_direction(n, &mut rng),
            )
            .unwrap();
            let dir = random_direction(n, &mut rng);
            for r in [x.radius() * 0.55, (x.radius() * 1.35).min(0.98)] {
                if (r - x.radius()).abs() < 0.05 {
                    continue;
                }
                let y = EvalPoint::from_polar(r, &dir).unwrap();
                let gamma = |radius: f64| {
                    let yy = EvalPoint::from_polar(radius, &dir).unwrap();
                    newton_kernel_direct(&x, &yy, n).unwrap() / (omega * (n as f64 - 2.0))
                };
                let fd = (gamma(r + h) - gamma(r - h)) / (2.0 * h);
                let series = radial_derivative_series(&x, &y, n, &truncation).expect("branch");
                worst = worst.max((series.value - fd).abs());
            }
        }
    }
    vec![CheckResult::judged(
        "kernel/radial_derivative_vs_fd",
        0.0,
        worst,
        tol::RADIAL_DERIVATIVE_FD_ABS,
        "termwise derivative series vs centered finite difference of the fundamental solution, both branches",
    )]
}

fn check_swap_symmetry(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(23));
    let truncation = Truncation::default();
    let mut worst = 0.0f64;
    for n in [3usize, 5] {
        for _ in 0..15 {
            let x = EvalPoint::from_polar(
                0.3 + 0.6 * rng.random::<f64>(),
                &random_direction(n, &mut rng),
            )
            .unwrap();
            let y = EvalPoint::from_polar(
                x.radius() * (0.3 + 0.4 * rng.random::<f64>()),
                &random_direction(n, &mut rng),
            )
            .unwrap();
            let forward = newton_kernel_series(&x, &y, n, &truncation).expect("branch");
            let backward = newton_kernel_series(&y, &x, n, &truncation).expect("branch");
            worst = worst.max((forward.value - backward.value).abs() / forward.value.abs());
        }
    }
    vec![CheckResult::judged(
        "kernel/swap_symmetry",
        0.0,
        worst,
        tol::KERNEL_SWAP_REL,
        "exchanging x and y maps one expansion branch onto the other",
    )]
}

fn check_tail_coverage(dom: &Annulus, seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(24));
    let n = dom.dimension();
    let mut covered = 0usize;
    let mut total = 0usize;
    let mut violations = Vec::new();
    for _ in 0..200 {
        let x = random_interior_point(dom, 0.02, &mut rng);
        let y = random_interior_point(dom, 0.02, &mut rng);
        // Kernel series needs distinct radii; regular part does not.
        let adaptive = Truncation::new(400, 1e-8, true).unwrap();
        let h_short = regular_part(&x, &y, dom, &adaptive).expect("interior");
        let h_long = regular_part(
            &x,
            &y,
            dom,
            &Truncation::fixed((4 * h_short.terms_used).min(2000)),
        )
        .expect("interior");
        let remainder = (h_long.value - h_short.value).abs();
        total += 1;
        if remainder <= h_short.tail_estimate || !h_short.tail_reliable {
            covered += 1;
        } else {
            violations.push(format!(
                "H at (|x|,|y|)=({:.3},{:.3}): remainder {:.2e} > tail {:.2e}",
                x.radius(),
                y.radius(),
                remainder,
                h_short.tail_estimate
            ));
        }
        if x.radius() != y.radius() {
            let k_short = newton_kernel_series(&x, &y, n, &adaptive).expect("distinct radii");
            let k_long = newton_kernel_series(
                &x,
                &y,
                n,
                &Truncation::fixed((4 * k_short.terms_used).min(2000)),
            )
            .expect("distinct radii");
            let remainder = (k_long.value - k_short.value).abs();
            total += 1;
            if remainder <= k_short.tail_estimate || !k_short.tail_reliable {
                covered += 1;
            } else {
                violations.push(format!(
                    "kernel at ratio {:.3}: remainder {:.2e} > tail {:.2e}",
                    x.radius().min(y.radius()) / x.radius().max(y.radius()),
                    remainder,
                    k_short.tail_estimate
                ));
            }
        }
    }
    let fraction = covered as f64 / total as f64;
    let notes = if violations.is_empty() {
        format!("tail bound covered the observed remainder at all {total} sampled evaluations")
    } else {
        format!("violations logged as findings: {}", violations.join("; "))
    };
    vec![CheckResult {
        name: "kernel/tail_bound_coverage".to_string(),
        target: 1.0,
        measured: fraction,
        tolerance: 1.0 - tol::TAIL_COVERAGE_FRACTION,
        status: if fraction >= tol::TAIL_COVERAGE_FRACTION {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        notes,
    }]
}

fn check_coefficient_double_entry() -> Vec<CheckResult> {
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5, 7] {
        for a in [0.2, 0.5, 0.8] {
            let dom = Annulus::new(n, a).unwrap();
            for m in 1..=tol::COEFF_MAX_ORDER {
                for i in 0..9 {
                    let rho = a + (1.0 - a) * i as f64 / 8.0;
                    let (ca, cb) = coeffs_via_cramer(m, &dom, rho).expect("non-singular");
                    let fa = coeff_a(m, &dom, rho).expect("valid");
                    let fb = coeff_b(m, &dom, rho).expect("valid");
                    worst = worst.max((fa - ca).abs() / ca.abs());
                    worst = worst.max((fb - cb).abs() / cb.abs().max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    vec![CheckResult::judged(
        "green/coeff_closed_vs_cramer",
        0.0,
        worst,
        tol::COEFF_DOUBLE_ENTRY_REL,
        "closed forms vs direct solve of the order-m boundary system, m <= 50, a in {0.2,0.5,0.8}, 9-point radius grid",
    )]
}

fn check_boundary_system_residuals() -> Vec<CheckResult> {
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5, 7] {
        let nf = n as f64;
        for a in [0.2f64, 0.5, 0.8] {
            let dom = Annulus::new(n, a).unwrap();
            for m in 1..=tol::COEFF_MAX_ORDER {
                for i in 0..9 {
                    let rho = a + (1.0 - a) * i as f64 / 8.0;
                    let am = coeff_a(m, &dom, rho).expect("valid");
                    let bm = coeff_b(m, &dom, rho).expect("valid");
                    let mf = m as f64;
                    let beta = mf + nf - 2.0;
                    let p = 2.0 * mf + nf - 2.0;
                    let rhs1 = -(beta / p) * rho.powi(m as i32);
                    let r1 = mf * am - beta * bm - rhs1;
                    let scale1 = (mf * am).abs().max((beta * bm).abs()).max(rhs1.abs());
                    worst = worst.max(r1.abs() / scale1);

                    let lhs2a = mf * a.powi(m as i32 - 1) * am;
                    let lhs2b = beta * a.powi(-(m as i32 + n as i32 - 1)) * bm;
                    let rhs2 =
                        (mf * a.powi(m as i32 - 1) / p) * rho.powi(-(m as i32 + n as i32 - 2));
                    let r2 = lhs2a - lhs2b - rhs2;
                    let scale2 = lhs2a.abs().max(lhs2b.abs()).max(rhs2.abs());
                    worst = worst.max(r2.abs() / scale2);
                }
            }
        }
    }
    vec![CheckResult::judged(
        "green/boundary_system_residual",
        0.0,
        worst,
        tol::COEFF_DOUBLE_ENTRY_REL,
        "closed-form coefficients substituted back into both equations of the order-m system",
    )]
}

fn check_neumann_condition(
    dom: &Annulus,
    options: &VerificationOptions,
    seed: u64,
) -> Vec<CheckResult> {
    // Criterion fixes N = 3 and N = 4; cover the domain's own dimension too.
    let mut dims = vec![3usize, 4];
    if !dims.contains(&dom.dimension()) {
        dims.push(dom.dimension());
    }
    let relax = tol::conditioning_relaxation(dom.inner_radius());
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(31));
    let mut checks = Vec::new();
    for n in dims {
        let d = Annulus::new(n, dom.inner_radius()).unwrap();
        let c0_here = effective_c0(&d, options);
        let x = random_interior_point(&d, 0.1, &mut rng);
        let target = -1.0 / d.boundary_measure();
        let mut worst = 0.0f64;
        let mut worst_tail = 0.0f64;
        let mut tails_reliable = true;
        for radius in [1.0, d.inner_radius()] {
            for _ in 0..40 {
                let dir = random_direction(n, &mut rng);
                if x.direction().cos_angle(&dir).acos() < tol::NEUMANN_MIN_ANGLE {
                    continue;
                }
                let y = EvalPoint::from_polar(radius, &dir).unwrap();
                let deriv =
                    normal_derivative_in_y_with_c0(&x, &y, &d, &options.truncation, c0_here)
                        .expect("boundary point");
                worst = worst.max((deriv.value - target).abs());
                worst_tail = worst_tail.max(deriv.tail_estimate);
                tails_reliable &= deriv.tail_reliable;
            }
        }
        let mut check = CheckResult::judged(
            &format!("green/neumann_condition_y_n{n}"),
            0.0,
            worst,
            tol::NEUMANN_RESIDUAL_ABS,
            "max |dG/dnu_y + 1/|dOmega|| at sampled boundary points, angular separation >= 0.3 rad",
        )
        .relaxed(relax);
        // A residual cannot be judged below the series' own truncation
        // tail; when the order budget leaves the tail above the threshold
        // the measurement is inconclusive, not failed.
        if check.status == CheckStatus::Fail
            && (worst_tail > tol::NEUMANN_RESIDUAL_ABS * relax || !tails_reliable)
        {
            check.status = CheckStatus::Flagged;
            check.notes = format!(
                "{} [series tail {:.1e} above the threshold at this truncation budget: inconclusive]",
                check.notes, worst_tail
            );
        }
        checks.push(check);
    }
    checks
}

fn check_harmonicity(dom: &Annulus, options: &VerificationOptions, seed: u64) -> Vec<CheckResult> {
    let c0 = effective_c0(dom, options);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(32));
    let relax = tol::conditioning_relaxation(dom.inner_radius());
    // Thin shells need proportionally smaller steps so the stencils fit;
    // the measured order is scale-free.
    let gap = 1.0 - dom.inner_radius();
    let step_scale = (gap / (8.0 * tol::FD_LAPLACIAN_STEPS[0])).min(1.0);
    let steps: Vec<f64> = tol::FD_LAPLACIAN_STEPS
        .iter()
        .map(|h| h * step_scale)
        .collect();
    let margin = 2.0 * steps[0];
    let separation = (0.1f64).min(0.25 * gap);
    // The Laplacian stencil divides series noise by h², so this check
    // needs a much tighter relative tolerance than ordinary evaluation.
    let truncation = Truncation::new(options.truncation.max_order().max(600), 1e-13, true)
        .expect("valid policy");
    let mut checks = Vec::new();

    for variable in ["y", "x"] {
        let mut orders = Vec::new();
        for _ in 0..4 {
            let x = random_interior_point(dom, margin, &mut rng);
            let mut y = random_interior_point(dom, margin, &mut rng);
            while y.distance(&x) < separation {
                y = random_interior_point(dom, margin, &mut rng);
            }
            let field = |p: &[f64]| {
                let p = EvalPoint::new(p).expect("nonzero");
                let value = if variable == "y" {
                    regular_part_with_c0(&x, &p, dom, &truncation, c0)
                } else {
                    regular_part_with_c0(&p, &y, dom, &truncation, c0)
                };
                value.expect("interior").value
            };
            let at = if variable == "y" {
                y.clone()
            } else {
                x.clone()
            };
            let residuals: Vec<f64> = steps
                .iter()
                .map(|&h| {
                    fd_laplacian(field, &at, h, dom)
                        .expect("stencil inside")
                        .abs()
                })
                .collect();
            // Log-log slope over the three step sizes.
            let order = fit_order(&steps, &residuals);
            orders.push(order);
        }
        let mean_order = orders.iter().sum::<f64>() / orders.len() as f64;
        checks.push(
            CheckResult::judged(
                &format!("green/harmonicity_h_in_{variable}"),
                tol::FD_LAPLACIAN_ORDER,
                mean_order,
                tol::FD_LAPLACIAN_ORDER_TOL,
                "log-log convergence order of the FD Laplacian residual of the regular part",
            )
            .relaxed(relax),
        );
    }

    // FD operator sanity on known fields (order fit + exact values).
    let n = dom.dimension();
    let p = random_interior_point(dom, margin, &mut rng);
    let quadratic = |y: &[f64]| y.iter().map(|c| c * c).sum::<f64>();
    let lap = fd_laplacian(quadratic, &p, 1e-3 * step_scale, dom).expect("inside");
    checks.push(CheckResult::judged(
        "verify/fd_laplacian_quadratic",
        2.0 * n as f64,
        lap,
        1e-6,
        "Laplacian of |y|^2 is 2N",
    ));
    let harmonic = move |y: &[f64]| {
        let r: f64 = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        r.powi(2 - n as i32)
    };
    let residuals: Vec<f64> = steps
        .iter()
        .map(|&h| fd_laplacian(harmonic, &p, h, dom).expect("inside").abs())
        .collect();
    checks.push(CheckResult::judged(
        "verify/fd_laplacian_order",
        tol::FD_LAPLACIAN_ORDER,
        fit_order(&steps, &residuals),
        tol::FD_LAPLACIAN_ORDER_TOL,
        "measured convergence order on the harmonic field |y|^{2-N}",
    ));
    checks
}

fn fit_order(steps: &[f64], residuals: &[f64]) -> f64 {
    // Least-squares slope of log(residual) against log(h).
    let logs: Vec<(f64, f64)> = steps
        .iter()
        .zip(residuals)
        .map(|(&h, &r)| (h.ln(), r.max(1e-300).ln()))
        .collect();
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|(x, _)| x).sum();
    let sy: f64 = logs.iter().map(|(_, y)| y).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = logs.iter().map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn check_dirac_flux(dom: &Annulus, options: &VerificationOptions, seed: u64) -> Vec<CheckResult> {
    let c0 = effective_c0(dom, options);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(33));
    // The probe ball must fit inside the shell with headroom.
    let eps = tol::FLUX_PROBE_RADIUS.min(0.2 * (1.0 - dom.inner_radius()));
    let x = random_interior_point(dom, 2.0 * eps, &mut rng);
    let n = dom.dimension();
    let omega = dom.sphere_area();
    let truncation = options.truncation;
    // The no-mass check on H alone is the tight one: its residual is the
    // sampled Hessian term ε dᵀ(∇²H)d, ~1e-4 per direction pair, so the
    // 1e-6 flux tolerance needs a few times 10^4 pairs.
    let samples = options.quadrature.sphere_samples().max(65_536);
    let spec = QuadratureSpec::new(options.quadrature.radial_nodes(), samples, 0)
        .expect("valid budget")
        .with_seed(seed.wrapping_add(34));

    let flux_g = flux_probe_field(
        |y| Ok(green_with_c0(&x, y, dom, &truncation, c0)?.green),
        &x,
        dom,
        eps,
        &spec,
    )
    .expect("probe inside");
    let flux_gamma = flux_probe_field(
        |y| Ok(newton_kernel_direct(&x, y, n)? / (omega * (n as f64 - 2.0))),
        &x,
        dom,
        eps,
        &spec,
    )
    .expect("probe inside");
    let flux_h = flux_probe_field(
        |y| Ok(regular_part_with_c0(&x, y, dom, &truncation, c0)?.value),
        &x,
        dom,
        eps,
        &spec,
    )
    .expect("probe inside");

    vec![
        CheckResult::judged(
            "green/dirac_flux",
            tol::FLUX_TARGET,
            flux_g,
            tol::FLUX_ABS,
            "outward flux of grad_y G through a radius-0.01 sphere around the source",
        ),
        CheckResult::judged(
            "green/flux_fundamental_solution",
            tol::FLUX_TARGET,
            flux_gamma,
            tol::FLUX_ABS,
            "the fundamental solution alone carries the whole Dirac mass",
        ),
        CheckResult::judged(
            "green/flux_smooth_part",
            0.0,
            flux_h,
            tol::FLUX_SMOOTH_ABS,
            "the regular part alone carries no mass",
        ),
        CheckResult::judged(
            "green/flux_linearity",
            0.0,
            (flux_gamma - flux_h) - flux_g,
            1e-9,
            "flux(Gamma) - flux(H) = flux(G) on identical probe directions",
        ),
    ]
}

fn check_exchange_identity(
    dom: &Annulus,
    options: &VerificationOptions,
    seed: u64,
) -> Vec<CheckResult> {
    let c0 = effective_c0(dom, options);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(35));
    let n = dom.dimension() as i32;
    let mut worst_excess = 0.0f64;
    let mut worst_equal_radii = 0.0f64;
    for _ in 0..100 {
        let x = random_interior_point(dom, 0.01, &mut rng);
        let mut y = random_interior_point(dom, 0.01, &mut rng);
        while y.distance(&x) < 1e-3 {
            y = random_interior_point(dom, 0.01, &mut rng);
        }
        let fwd = green_with_c0(&x, &y, dom, &options.truncation, c0).expect("interior");
        let bwd = green_with_c0(&y, &x, dom, &options.truncation, c0).expect("interior");
        let measured = fwd.green - bwd.green;
        let predicted = c0 * (x.radius().powi(2 - n) - y.radius().powi(2 - n));
        let budget = fwd.tail_estimate + bwd.tail_estimate + tol::EXCHANGE_ROUNDING_ABS;
        worst_excess = worst_excess.max((measured - predicted).abs() - budget);

        // Same pair projected to equal radii: the defect must vanish.
        let y_eq = EvalPoint::from_polar(x.radius(), y.direction()).unwrap();
        let fwd = green_with_c0(&x, &y_eq, dom, &options.truncation, c0).expect("interior");
        let bwd = green_with_c0(&y_eq, &x, dom, &options.truncation, c0).expect("interior");
        worst_equal_radii = worst_equal_radii.max((fwd.green - bwd.green).abs());
    }
    vec![
        CheckResult::judged(
            "green/exchange_identity",
            0.0,
            worst_excess.max(0.0),
            0.0,
            "G(x,y) - G(y,x) vs C_0(|x|^{2-N} - |y|^{2-N}) within combined tail estimates, 100 seeded pairs (measured: worst excess over budget)",
        ),
        CheckResult::judged(
            "green/exchange_equal_radii",
            0.0,
            worst_equal_radii,
            tol::EXCHANGE_EQUAL_RADII_ABS,
            "the defect vanishes when |x| = |y|",
        ),
    ]
}

fn check_mean_over_y(dom: &Annulus, options: &VerificationOptions, seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(36));
    let x = random_interior_point(dom, 0.05, &mut rng);
    let spec = options.quadrature.with_seed(seed.wrapping_add(37));
    let est = mean_over_y(&x, dom, &spec, &options.truncation).expect("interior");

    // Radial dependence of the measured mean, published in the notes.
    let lean = QuadratureSpec::new(16, 32, spec.monte_carlo_seed()).expect("valid");
    let profile: Vec<String> = (1..=3)
        .map(|i| {
            let rho = dom.inner_radius() + (1.0 - dom.inner_radius()) * i as f64 / 4.0;
            let p = EvalPoint::from_polar(rho, x.direction()).unwrap();
            let m = mean_over_y(&p, dom, &lean, &options.truncation).expect("interior");
            format!("mean(|x|={rho:.4}) = {:.8e}", m.value())
        })
        .collect();

    vec![
        CheckResult::judged(
            "green/mean_scheme_agreement",
            0.0,
            est.scheme_disagreement(),
            tol::MEAN_SCHEME_AGREEMENT_ABS,
            "Gauss-Legendre vs stratified Monte Carlo on the reduced radial integrand",
        ),
        CheckResult::reported(
            "green/mean_full_field_check",
            est.value(),
            est.full_field_mc,
            tol::MC_AGREEMENT_SIGMAS * est.full_field_std_error.max(1e-12),
            &format!(
                "full-field Monte Carlo of G with singular ball excised, std error {:.2e}",
                est.full_field_std_error
            ),
        ),
        CheckResult::reported(
            "green/mean_value_profile",
            0.0,
            est.value(),
            0.0,
            &format!(
                "measured mean of G(x,.) at |x| = {:.4}; zero-average claim measured, not assumed; {}",
                x.radius(),
                profile.join("; ")
            ),
        ),
    ]
}

fn check_quadrature_identities(
    dom: &Annulus,
    options: &VerificationOptions,
    seed: u64,
) -> Vec<CheckResult> {
    let n = dom.dimension();
    let a = dom.inner_radius();
    let spec = options.quadrature.with_seed(seed.wrapping_add(38));
    let mut checks = Vec::new();

    let constant = annulus_integral(|_| 1.0, dom, &spec).expect("finite");
    checks.push(CheckResult::judged(
        "verify/quadrature_volume",
        dom.volume(),
        constant.product_rule,
        tol::QUADRATURE_EXACT_REL * dom.volume(),
        "constant field integrates to |Omega|",
    ));

    let radial = annulus_integral(
        move |y: &[f64]| {
            let r: f64 = y.iter().map(|c| c * c).sum::<f64>().sqrt();
            r.powi(2 - n as i32)
        },
        dom,
        &spec,
    )
    .expect("finite");
    let exact = dom.sphere_area() * (1.0 - a * a) / 2.0;
    checks.push(CheckResult::judged(
        "verify/quadrature_radial_closed_form",
        exact,
        radial.product_rule,
        tol::QUADRATURE_RADIAL_REL * exact,
        "|y|^{2-N} integrates to omega (1-a^2)/2",
    ));

    // Smooth non-radial field: product rule vs Monte Carlo in sigmas.
    let smooth =
        annulus_integral(|y: &[f64]| (3.0 * y[0]).sin() + y[1] * y[1], dom, &spec).expect("finite");
    checks.push(CheckResult::judged(
        "verify/quadrature_mc_agreement",
        0.0,
        smooth.discrepancy_in_sigmas(),
        tol::MC_AGREEMENT_SIGMAS,
        "product rule vs companion Monte Carlo on a smooth field, in combined standard errors",
    ));

    // m >= 1 zonal sectors integrate to zero: radial x zonal test field.
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(39));
    let xi = random_direction(n, &mut rng);
    let zonal_field = move |y: &[f64]| {
        let r: f64 = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        let dir = UnitDirection::new(y).expect("nonzero");
        r * zonal(3, n, &xi, &dir).expect("valid")
    };
    let sector = annulus_integral(zonal_field, dom, &spec).expect("finite");
    checks.push(CheckResult::judged(
        "verify/quadrature_zonal_average",
        0.0,
        sector.monte_carlo.abs() / sector.mc_std_error.max(1e-300),
        tol::MC_AGREEMENT_SIGMAS,
        "radial x Z_3 field integrates to zero within Monte Carlo error",
    ));
    checks
}

fn check_green_parts_identity(
    dom: &Annulus,
    options: &VerificationOptions,
    seed: u64,
) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(40));
    let mut worst = 0.0f64;
    let mut robin_sym = 0.0f64;
    for _ in 0..20 {
        let x = random_interior_point(dom, 0.01, &mut rng);
        let mut y = random_interior_point(dom, 0.01, &mut rng);
        while y.distance(&x) < 1e-6 {
            y = random_interior_point(dom, 0.01, &mut rng);
        }
        let g = crate::green::green(&x, &y, dom, &options.truncation).expect("interior");
        // Stored identity is exact by construction.
        worst = worst.max((g.green - (g.singular_part - g.regular_part)).abs());

        let rot = random_orthogonal(dom.dimension(), &mut rng);
        let xr = EvalPoint::new(&apply_matrix(&rot, x.coordinates())).unwrap();
        let tau = robin(&x, dom, &options.truncation).expect("interior");
        let tau_r = robin(&xr, dom, &options.truncation).expect("interior");
        robin_sym = robin_sym.max(scaled_error(tau_r.value, tau.value));
    }
    vec![
        CheckResult::judged(
            "green/parts_identity",
            0.0,
            worst,
            0.0,
            "green = singular_part - regular_part holds exactly as stored",
        ),
        CheckResult::judged(
            "green/robin_radial_symmetry",
            0.0,
            robin_sym,
            tol::ROTATION_INVARIANCE_REL,
            "the Robin function depends on |x| only",
        ),
    ]
}
