//! Series truncation control: cutoff policy, compensated summation, and the
//! shared adaptive loop used by every expansion in the crate.

use crate::error::{Error, Result};

/// Number of consecutive sub-tolerance envelope terms required before an
/// adaptive sum stops. The zonal factors oscillate in sign, so a single
/// small term is not evidence of convergence.
pub const ADAPTIVE_STREAK: u32 = 3;

/// Series cutoff policy: hard cap `max_order`, relative tolerance for the
/// adaptive stopping rule, and whether the rule is active at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    max_order: usize,
    rel_tol: f64,
    adaptive: bool,
}

impl Truncation {
    pub fn new(max_order: usize, rel_tol: f64, adaptive: bool) -> Result<Self> {
        if max_order < 1 {
            return Err(Error::InvalidParameter {
                name: "max_order",
                value: max_order as f64,
            });
        }
        if rel_tol <= 0.0 || !rel_tol.is_finite() {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                value: rel_tol,
            });
        }
        Ok(Self {
            max_order,
            rel_tol,
            adaptive,
        })
    }

    /// Fixed truncation at exactly `max_order` terms (no adaptive stopping).
    /// Unlike [`Truncation::new`], order 0 is allowed: several m = 0
    /// sections of the expansions are exact and useful on their own.
    pub fn fixed(max_order: usize) -> Self {
        Self {
            max_order,
            rel_tol: f64::EPSILON,
            adaptive: false,
        }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn adaptive(&self) -> bool {
        self.adaptive
    }

    /// Same policy with the hard cap raised to `max_order`.
    pub fn with_max_order(&self, max_order: usize) -> Self {
        Self { max_order, ..*self }
    }
}

impl Default for Truncation {
    /// 200 orders, relative tolerance 1e-10, adaptive stopping on.
    fn default() -> Self {
        Self {
            max_order: 200,
            rel_tol: 1e-10,
            adaptive: true,
        }
    }
}

/// Result of a truncated series evaluation. `terms_used` is the highest
/// retained order (so it never exceeds the policy's `max_order`), and
/// `tail_estimate` is an envelope-based upper bound on the discarded
/// remainder. When the geometric convergence certificate fails the bound
/// cannot be trusted and `tail_reliable` is false.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub tail_reliable: bool,
}

/// Kahan compensated accumulator. Summation order across the crate is fixed
/// (ascending order m), which keeps batch results bit-reproducible across
/// thread counts.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new(initial: f64) -> Self {
        Self {
            sum: initial,
            compensation: 0.0,
        }
    }

    pub fn add(&mut self, term: f64) {
        let y = term - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// One term of an adaptive sum: the signed value and a nonnegative envelope
/// that bounds the magnitude of every same-order contribution.
#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub value: f64,
    pub envelope: f64,
}

/// Geometry of a series' tail: the asymptotic term ratio `q` and the
/// polynomial growth degree of the envelope (from the zonal diagonal,
/// Z_m(ξ,ξ) ~ m^{N-2}).
#[derive(Debug, Clone, Copy)]
pub struct TailGeometry {
    pub ratio: f64,
    pub growth_degree: i32,
}

impl TailGeometry {
    /// Effective envelope ratio valid from order `m` on: the geometric ratio
    /// inflated by the worst remaining polynomial growth factor.
    fn effective_ratio(&self, m: usize) -> f64 {
        self.ratio * ((m as f64 + 2.0) / (m as f64 + 1.0)).powi(self.growth_degree)
    }

    /// True when the envelope sequence is certified to decay geometrically.
    pub fn certified(&self) -> bool {
        self.ratio < 1.0
    }
}

/// Sum `term(m)` for m = start..=max_order with compensated accumulation.
///
/// Adaptive mode stops after [`ADAPTIVE_STREAK`] consecutive orders whose
/// envelope falls below `rel_tol · |partial sum|`. The returned tail bound
/// is envelope(M+1) / (1 - q_eff) when the tail geometry certifies q < 1;
/// otherwise the bare next envelope is reported and flagged unreliable.
///
/// `base` seeds the accumulator (e.g. a closed-form m = 0 sector handled
/// outside the loop) and participates in the relative stopping threshold.
pub(crate) fn sum_adaptive<F>(
    start: usize,
    truncation: &Truncation,
    geometry: TailGeometry,
    base: f64,
    mut term: F,
) -> SeriesValue
where
    F: FnMut(usize) -> Term,
{
    let mut acc = KahanSum::new(base);
    let mut streak = 0u32;
    let mut last_order = start.saturating_sub(1);

    for m in start..=truncation.max_order() {
        let t = term(m);
        acc.add(t.value);
        last_order = m;
        if truncation.adaptive() {
            if t.envelope < truncation.rel_tol() * acc.value().abs() {
                streak += 1;
                if streak >= ADAPTIVE_STREAK {
                    break;
                }
            } else {
                streak = 0;
            }
        }
    }

    let next_envelope = term(last_order + 1).envelope;
    let q_eff = geometry.effective_ratio(last_order + 1);
    let (tail_estimate, tail_reliable) = if q_eff < 1.0 {
        (next_envelope / (1.0 - q_eff), true)
    } else {
        (next_envelope, false)
    };

    SeriesValue {
        value: acc.value(),
        terms_used: last_order,
        tail_estimate,
        tail_reliable,
    }
}
