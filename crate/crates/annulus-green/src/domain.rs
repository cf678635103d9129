//! Geometric domain types: the annulus, unit directions, evaluation points.

use crate::error::{Error, Result};
use crate::harmonics::surface_area;

/// Slack used when classifying radii against the annulus boundaries, so that
/// points constructed from normalized coordinates (radius 1 up to rounding)
/// are accepted.
pub(crate) const RADIUS_SLACK: f64 = 1e-12;

/// Inner radii above this value make the coefficient denominators
/// 1/(a^{2m+N-2} - 1) ill-conditioned; evaluations still run but
/// verification attaches a conditioning warning.
pub const WELL_CONDITIONED_INNER_RADIUS: f64 = 0.95;

/// The spherical shell { x in R^N : a < |x| < 1 } with N >= 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    dimension: usize,
    inner_radius: f64,
}

impl Annulus {
    /// Build an annulus descriptor, validating N >= 3 and 0 < a < 1.
    pub fn new(dimension: usize, inner_radius: f64) -> Result<Self> {
        if dimension < 3 {
            return Err(Error::DimensionTooSmall(dimension));
        }
        if inner_radius <= 0.0 || inner_radius >= 1.0 || !inner_radius.is_finite() {
            return Err(Error::InvalidInnerRadius(inner_radius));
        }
        Ok(Self {
            dimension,
            inner_radius,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    /// Surface measure of the unit sphere S^{N-1} of the ambient space.
    pub fn sphere_area(&self) -> f64 {
        surface_area(self.dimension).expect("dimension validated at construction")
    }

    /// Total boundary measure |∂Ω| = ω_{N-1} (1 + a^{N-1}).
    pub fn boundary_measure(&self) -> f64 {
        self.sphere_area() * (1.0 + self.inner_radius.powi(self.dimension as i32 - 1))
    }

    /// Volume |Ω| = ω_{N-1} (1 - a^N) / N.
    pub fn volume(&self) -> f64 {
        self.sphere_area() * (1.0 - self.inner_radius.powi(self.dimension as i32))
            / self.dimension as f64
    }

    /// True when the inner radius is within the recommended range
    /// (a <= 0.95); beyond it the coefficient formulas lose accuracy
    /// like 1/((2m+N-2)(1-a)).
    pub fn is_well_conditioned(&self) -> bool {
        self.inner_radius <= WELL_CONDITIONED_INNER_RADIUS
    }

    /// True when `radius` lies in the closed shell [a, 1] up to rounding slack.
    pub fn contains_radius(&self, radius: f64) -> bool {
        radius >= self.inner_radius - RADIUS_SLACK && radius <= 1.0 + RADIUS_SLACK
    }

    /// Check that a point lives in the closed annulus.
    pub fn check_point(&self, p: &EvalPoint) -> Result<()> {
        if p.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: p.dim(),
            });
        }
        if !self.contains_radius(p.radius()) {
            return Err(Error::OutsideAnnulus {
                radius: p.radius(),
                inner: self.inner_radius,
            });
        }
        Ok(())
    }

    /// Which boundary sphere a radius lies on, if any.
    pub fn boundary_component(&self, radius: f64) -> Option<BoundaryComponent> {
        if (radius - 1.0).abs() <= RADIUS_SLACK.max(1e-9) {
            Some(BoundaryComponent::Outer)
        } else if (radius - self.inner_radius).abs() <= RADIUS_SLACK.max(1e-9) {
            Some(BoundaryComponent::Inner)
        } else {
            None
        }
    }
}

/// The two components of the annulus boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryComponent {
    /// Sphere of radius 1; outward normal is +∂/∂r.
    Outer,
    /// Sphere of radius a; outward normal is -∂/∂r.
    Inner,
}

impl BoundaryComponent {
    /// Sign relating the outward normal derivative to the radial derivative.
    pub fn normal_sign(&self) -> f64 {
        match self {
            BoundaryComponent::Outer => 1.0,
            BoundaryComponent::Inner => -1.0,
        }
    }
}

/// A direction on the unit sphere S^{N-1}, renormalized on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitDirection(Vec<f64>);

impl UnitDirection {
    /// Normalize the given components; errors on (near-)zero input.
    pub fn new(components: &[f64]) -> Result<Self> {
        let norm = euclidean_norm(components);
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::ZeroVector);
        }
        Ok(Self(components.iter().map(|c| c / norm).collect()))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    /// Euclidean inner product with another direction.
    pub fn dot(&self, other: &UnitDirection) -> f64 {
        dot(&self.0, &other.0)
    }

    /// Inner product clamped to [-1, 1], absorbing rounding overshoot.
    pub fn cos_angle(&self, other: &UnitDirection) -> f64 {
        self.dot(other).clamp(-1.0, 1.0)
    }

    /// The coordinate axis e_i as a direction.
    pub fn axis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Self(v)
    }
}

/// A point of R^N with cached radius and unit direction.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalPoint {
    coordinates: Vec<f64>,
    radius: f64,
    direction: UnitDirection,
}

impl EvalPoint {
    /// Build a point from coordinates; the origin is rejected because its
    /// direction is undefined.
    pub fn new(coordinates: &[f64]) -> Result<Self> {
        let radius = euclidean_norm(coordinates);
        let direction = UnitDirection::new(coordinates)?;
        Ok(Self {
            coordinates: coordinates.to_vec(),
            radius,
            direction,
        })
    }

    /// The point r * u.
    pub fn from_polar(radius: f64, direction: &UnitDirection) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::InvalidParameter {
                name: "radius",
                value: radius,
            });
        }
        let coordinates: Vec<f64> = direction.components().iter().map(|c| c * radius).collect();
        Ok(Self {
            coordinates,
            radius,
            direction: direction.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.coordinates
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn direction(&self) -> &UnitDirection {
        &self.direction
    }

    /// Euclidean distance to another point.
    pub fn distance(&self, other: &EvalPoint) -> f64 {
        self.coordinates
            .iter()
            .zip(&other.coordinates)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

pub(crate) fn euclidean_norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_validation() {
        assert!(Annulus::new(3, 0.5).is_ok());
        assert_eq!(Annulus::new(2, 0.5), Err(Error::DimensionTooSmall(2)));
        assert_eq!(Annulus::new(3, 0.0), Err(Error::InvalidInnerRadius(0.0)));
        assert_eq!(Annulus::new(3, 1.0), Err(Error::InvalidInnerRadius(1.0)));
        assert_eq!(Annulus::new(4, 1.2), Err(Error::InvalidInnerRadius(1.2)));
    }

    #[test]
    fn derived_measures() {
        // N = 3, a = 1/2: |∂Ω| = 4π (1 + 1/4), |Ω| = 4π (1 - 1/8) / 3.
        let dom = Annulus::new(3, 0.5).unwrap();
        let pi = std::f64::consts::PI;
        assert!((dom.boundary_measure() - 4.0 * pi * 1.25).abs() < 1e-12);
        assert!((dom.volume() - 4.0 * pi * 0.875 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unit_direction_renormalizes() {
        let u = UnitDirection::new(&[3.0, 4.0, 0.0]).unwrap();
        assert!((euclidean_norm(u.components()) - 1.0).abs() < 1e-14);
        assert!((u.components()[0] - 0.6).abs() < 1e-15);
        assert_eq!(UnitDirection::new(&[0.0, 0.0, 0.0]), Err(Error::ZeroVector));
    }

    #[test]
    fn eval_point_caches_radius_and_direction() {
        let p = EvalPoint::new(&[0.3, 0.0, 0.4]).unwrap();
        assert!((p.radius() - 0.5).abs() < 1e-15);
        assert!((p.direction().components()[2] - 0.8).abs() < 1e-15);
        assert_eq!(
            EvalPoint::new(&[0.0, 0.0, 0.0]).unwrap_err(),
            Error::ZeroVector
        );
    }

    #[test]
    fn boundary_classification() {
        let dom = Annulus::new(3, 0.5).unwrap();
        assert_eq!(dom.boundary_component(1.0), Some(BoundaryComponent::Outer));
        assert_eq!(dom.boundary_component(0.5), Some(BoundaryComponent::Inner));
        assert_eq!(dom.boundary_component(0.75), None);
    }
}
