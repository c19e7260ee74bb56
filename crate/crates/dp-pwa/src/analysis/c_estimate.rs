use crate::error::{Error, Result};
use crate::problem::instance::ProblemInstance;
use crate::samplers::source::RandomSource;
use crate::samplers::uniform::sample_box_uniform;
use crate::solver::{brute_force_optimum, oracle_resolution};

/// Monte Carlo estimate of the exponential-sampler concentration ratio,
/// with a delta-method standard error for the ratio of sample means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CEstimate {
    pub value: f64,
    pub std_error: f64,
}

/// Concentration ratio C(gamma, eps) of the exponential sampler on this
/// instance: the fraction of the box (by volume) at suboptimality >= gamma,
/// divided by the mean of `exp(-eps * (f - f_opt) / (2 b_max))` under the
/// uniform law on the box. Multiplying C by `exp(-eps gamma / 2 b_max)`
/// bounds the sampler's probability of landing at suboptimality >= gamma;
/// C(0, eps) * 2 b_max / eps bounds its mean suboptimality.
///
/// The reference optimum is computed internally by grid search (d <= 4);
/// use [`estimate_c_with_fopt`] to amortize that solve across many calls.
pub fn estimate_c(
    instance: &ProblemInstance,
    gamma: f64,
    eps: f64,
    n_samples: usize,
    rng: &mut RandomSource,
) -> Result<CEstimate> {
    let d = instance.domain.dimension();
    let (f_opt, _) =
        brute_force_optimum(&instance.objective, &instance.domain, oracle_resolution(d))?;
    estimate_c_with_fopt(instance, f_opt, gamma, eps, n_samples, rng)
}

/// [`estimate_c`] with a caller-provided reference optimum.
pub fn estimate_c_with_fopt(
    instance: &ProblemInstance,
    f_opt: f64,
    gamma: f64,
    eps: f64,
    n_samples: usize,
    rng: &mut RandomSource,
) -> Result<CEstimate> {
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::invalid(format!("gamma must be nonnegative, got {gamma}")));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::invalid(format!("epsilon must be positive, got {eps}")));
    }
    if !f_opt.is_finite() {
        return Err(Error::invalid(format!("reference optimum must be finite, got {f_opt}")));
    }
    if n_samples < 2 {
        return Err(Error::invalid("need at least 2 samples"));
    }
    if instance.domain.lower().iter().zip(instance.domain.upper()).any(|(lo, hi)| lo == hi) {
        return Err(Error::invalid("zero-volume box: uniform sampling cannot cover it"));
    }

    // Work with f - f_opt >= 0 so the exponential weights stay in (0, 1]
    // for any eps; the exp(-eps f_opt / 2 b_max) factors of numerator and
    // denominator cancel in the ratio.
    let rate = eps / (2.0 * instance.adjacency.b_max());
    let n = n_samples as f64;
    let mut sum_g = 0.0f64; // indicator: f >= f_opt + gamma
    let mut sum_w = 0.0f64; // weight: exp(-rate * (f - f_opt))
    let mut sum_gg = 0.0f64;
    let mut sum_ww = 0.0f64;
    let mut sum_gw = 0.0f64;
    for _ in 0..n_samples {
        let x = sample_box_uniform(&instance.domain, rng);
        let (f, _) = instance.objective.evaluate(&x)?;
        let g = if f >= f_opt + gamma { 1.0 } else { 0.0 };
        let w = (-rate * (f - f_opt)).exp();
        sum_g += g;
        sum_w += w;
        sum_gg += g * g;
        sum_ww += w * w;
        sum_gw += g * w;
    }
    let mean_g = sum_g / n;
    let mean_w = sum_w / n;
    if mean_w <= 0.0 {
        return Err(Error::invalid(
            "exponential weights underflowed to zero; epsilon too large for this instance",
        ));
    }
    let value = mean_g / mean_w;

    // Delta method for the ratio of correlated sample means.
    let var_g = (sum_gg / n - mean_g * mean_g).max(0.0);
    let var_w = (sum_ww / n - mean_w * mean_w).max(0.0);
    let cov = sum_gw / n - mean_g * mean_w;
    let rel_var = var_g / (mean_g * mean_g).max(f64::MIN_POSITIVE)
        - 2.0 * cov / (mean_g * mean_w).max(f64::MIN_POSITIVE)
        + var_w / (mean_w * mean_w);
    let std_error = value * (rel_var.max(0.0) / n).sqrt();

    Ok(CEstimate { value, std_error })
}
