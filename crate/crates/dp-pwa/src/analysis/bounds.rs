use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named theoretical bound with the inputs that produced it, so reports
/// stay auditable after serialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_name: String,
    pub value: f64,
    pub inputs: BTreeMap<String, f64>,
}

impl BoundReport {
    fn new(bound_name: &str, value: f64, inputs: &[(&str, f64)]) -> Self {
        BoundReport {
            bound_name: bound_name.to_string(),
            value,
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

fn require_positive(name: &str, v: f64) -> Result<f64> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::invalid(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(v)
}

fn require_nonnegative(name: &str, v: f64) -> Result<f64> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::invalid(format!("{name} must be nonnegative and finite, got {v}")));
    }
    Ok(v)
}

/// Expected suboptimality of solution perturbation: `G * d^{3/2} * delta /
/// eps`, where `delta` is the per-axis solution sensitivity (the l2
/// sensitivity bound divided by sqrt(d)).
///
/// Scaling: linear in each of G, delta, and 1/eps.
pub fn bound_solution_perturbation(
    lipschitz: f64,
    d: usize,
    delta: f64,
    eps: f64,
) -> Result<BoundReport> {
    require_positive("G", lipschitz)?;
    require_positive("delta", delta)?;
    require_positive("eps", eps)?;
    if d == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let dd = d as f64;
    let value = lipschitz * dd.powf(1.5) * delta / eps;
    Ok(BoundReport::new(
        "solution_perturbation_mean",
        value,
        &[("G", lipschitz), ("d", dd), ("delta", delta), ("eps", eps)],
    ))
}

/// Expected suboptimality of the exponential sampler: `C0 * 2 * b_max /
/// eps`, with C0 the concentration ratio at gamma = 0 (see the C
/// estimator).
///
/// Scaling: linear in each of C0, b_max, and 1/eps.
pub fn bound_exponential_mean(b_max: f64, eps: f64, c0: f64) -> Result<BoundReport> {
    require_positive("b_max", b_max)?;
    require_positive("eps", eps)?;
    require_positive("C0", c0)?;
    let value = c0 * 2.0 * b_max / eps;
    Ok(BoundReport::new(
        "exponential_mechanism_mean",
        value,
        &[("b_max", b_max), ("eps", eps), ("C0", c0)],
    ))
}

/// Tail and mean guarantees for discrete exponential selection over a
/// finite candidate set of size `q_size`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscreteExpBounds {
    /// Score-deficit threshold `2 * sensitivity * (ln q_size + t) / eps`.
    pub threshold: f64,
    /// `P[deficit >= threshold] <= e^{-t}`.
    pub tail_probability: f64,
    /// `E[deficit] <= 2 * sensitivity * (1 + ln q_size) / eps`.
    pub mean_bound: f64,
}

/// Guarantees for discrete exponential selection: with probability at least
/// `1 - e^{-t}` the selected candidate's score deficit is below
/// `2*sensitivity*(ln q_size + t)/eps`, and the expected deficit is at most
/// `2*sensitivity*(1 + ln q_size)/eps`.
///
/// Scaling: threshold and mean are linear in sensitivity and 1/eps; the
/// tail probability depends only on t.
pub fn exp_mech_discrete_bounds(
    sensitivity: f64,
    eps: f64,
    q_size: usize,
    t: f64,
) -> Result<DiscreteExpBounds> {
    require_positive("sensitivity", sensitivity)?;
    require_positive("eps", eps)?;
    require_nonnegative("t", t)?;
    if q_size == 0 {
        return Err(Error::invalid("candidate set must be nonempty"));
    }
    let ln_q = (q_size as f64).ln();
    Ok(DiscreteExpBounds {
        threshold: 2.0 * sensitivity * (ln_q + t) / eps,
        tail_probability: (-t).exp(),
        mean_bound: 2.0 * sensitivity * (1.0 + ln_q) / eps,
    })
}

/// Expected score deficit of one private piece selection at budget `z`:
/// `2 * b_max * (1 + ln m) / z`.
///
/// Scaling: linear in b_max and 1/z.
pub fn gamma_bar(z: f64, b_max: f64, m: usize) -> Result<f64> {
    require_positive("z", z)?;
    require_nonnegative("b_max", b_max)?;
    if m == 0 {
        return Err(Error::invalid("piece count must be at least 1"));
    }
    Ok(2.0 * b_max * (1.0 + (m as f64).ln()) / z)
}

/// Expected suboptimality of the best iterate of the private subgradient
/// method: the classical projected-subgradient term
/// `(R^2 + G^2 sum alpha_i^2) / (2 sum alpha_i)` plus the per-step private
/// selection penalty `gamma_bar(eps / k)`.
///
/// Scaling: the classical term is linear under (R, alphas) -> (sR,
/// s*alphas); the penalty term is linear in b_max and in k/eps.
pub fn bound_dp_subgradient(
    radius: f64,
    lipschitz: f64,
    alphas: &[f64],
    eps: f64,
    k: usize,
    b_max: f64,
    m: usize,
) -> Result<BoundReport> {
    require_positive("R", radius)?;
    require_nonnegative("G", lipschitz)?;
    require_positive("eps", eps)?;
    if alphas.len() != k {
        return Err(Error::DimensionMismatch { expected: k, actual: alphas.len() });
    }
    if k == 0 {
        return Err(Error::invalid("iteration count must be at least 1"));
    }
    for (i, a) in alphas.iter().enumerate() {
        require_positive(&format!("alpha[{i}]"), *a)?;
    }
    let sum_alpha: f64 = alphas.iter().sum();
    let sum_alpha_sq: f64 = alphas.iter().map(|a| a * a).sum();
    let classical = (radius * radius + lipschitz * lipschitz * sum_alpha_sq) / (2.0 * sum_alpha);
    let penalty = gamma_bar(eps / k as f64, b_max, m)?;
    Ok(BoundReport::new(
        "dp_subgradient_best_iterate",
        classical + penalty,
        &[
            ("R", radius),
            ("G", lipschitz),
            ("sum_alpha", sum_alpha),
            ("sum_alpha_sq", sum_alpha_sq),
            ("eps", eps),
            ("k", k as f64),
            ("b_max", b_max),
            ("m", m as f64),
            ("gamma_bar", penalty),
        ],
    ))
}
