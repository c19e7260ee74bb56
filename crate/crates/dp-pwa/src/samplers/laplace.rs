//! Vector Laplace noise: density proportional to `exp(-eps ||w||_2 / delta)`.
//!
//! Sampled in polar form — an isotropic direction scaled by a magnitude with
//! Gamma(d, eps/delta) law, the magnitude distribution induced by that
//! density in d dimensions. The magnitude is drawn as a sum of d iid
//! exponentials, so no special-function code is involved.

use crate::error::{Error, Result};
use crate::problem::privacy::PrivacyBudget;
use crate::samplers::source::RandomSource;

/// Gamma(shape_d, rate) draw via the sum of `shape_d` iid Exp(rate)
/// variables. Mean is `shape_d / rate`.
pub fn sample_gamma_magnitude(
    shape_d: usize,
    rate: f64,
    rng: &mut RandomSource,
) -> Result<f64> {
    if shape_d == 0 {
        return Err(Error::invalid("gamma shape must be at least 1"));
    }
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::invalid(format!("gamma rate must be positive, got {rate}")));
    }
    let mut total = 0.0;
    for _ in 0..shape_d {
        // u in [0,1) keeps 1-u in (0,1], so ln never sees zero.
        let u = rng.next_f64();
        total -= (1.0 - u).ln();
    }
    Ok(total / rate)
}

/// Uniform direction on the unit sphere in d dimensions (normalized
/// standard Gaussian vector).
pub fn sample_unit_vector(d: usize, rng: &mut RandomSource) -> Result<Vec<f64>> {
    if d == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.next_gaussian()).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        // Astronomically rare; redraw instead of dividing by ~0.
        if norm > 1e-12 {
            return Ok(v.into_iter().map(|x| x / norm).collect());
        }
    }
}

/// Noise draw with density proportional to
/// `exp(-eps ||w||_2 / l2_sensitivity)` over R^d. Adding this to any
/// statistic with l2 sensitivity at most `l2_sensitivity` gives an
/// eps-differentially-private release. `E||w||_2 = d * l2_sensitivity / eps`.
pub fn sample_vector_laplace(
    d: usize,
    l2_sensitivity: f64,
    eps: &PrivacyBudget,
    rng: &mut RandomSource,
) -> Result<Vec<f64>> {
    if !(l2_sensitivity.is_finite() && l2_sensitivity > 0.0) {
        return Err(Error::invalid(format!(
            "l2 sensitivity must be positive, got {l2_sensitivity}"
        )));
    }
    let magnitude = sample_gamma_magnitude(d, eps.epsilon() / l2_sensitivity, rng)?;
    let direction = sample_unit_vector(d, rng)?;
    Ok(direction.into_iter().map(|u| u * magnitude).collect())
}
