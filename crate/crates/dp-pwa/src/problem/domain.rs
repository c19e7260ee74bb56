//! Axis-aligned box domains.

use crate::error::{Error, Result};

/// Feasible region `{x : lower <= x <= upper}` componentwise. Bounds are
/// finite and `lower[i] <= upper[i]` for every coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), actual: upper.len() });
        }
        if lower.is_empty() {
            return Err(Error::invalid("box must have at least one coordinate"));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::invalid(format!("box bound {i} is non-finite")));
            }
            if lo > hi {
                return Err(Error::invalid(format!(
                    "box bound {i} inverted: lower {lo} > upper {hi}"
                )));
            }
        }
        Ok(BoxDomain { lower, upper })
    }

    /// The hypercube `[-half_width, half_width]^d`.
    pub fn symmetric(d: usize, half_width: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::invalid(format!(
                "half width must be positive and finite, got {half_width}"
            )));
        }
        BoxDomain::new(vec![-half_width; d], vec![half_width; d])
    }

    /// The unit hypercube `[0, 1]^d`.
    pub fn unit(d: usize) -> Result<Self> {
        BoxDomain::new(vec![0.0; d], vec![1.0; d])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// l2 diameter: `|| upper - lower ||_2`.
    pub fn diameter(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| (hi - lo) * (hi - lo))
            .sum::<f64>()
            .sqrt()
    }

    pub fn center(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| 0.5 * (lo + hi))
            .collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    /// Componentwise projection onto the box (exact Euclidean projection for
    /// axis-aligned boxes).
    pub fn clamp(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), actual: x.len() });
        }
        Ok(x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(v, (lo, hi))| v.clamp(*lo, *hi))
            .collect())
    }

    /// In-place variant of [`BoxDomain::clamp`] for solver loops.
    pub fn clamp_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dimension());
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(*lo, *hi);
        }
    }
}
