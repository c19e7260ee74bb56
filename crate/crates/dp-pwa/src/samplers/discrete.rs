//! Exponential-mechanism sampling over a finite index set.

use crate::error::{Error, Result};
use crate::problem::privacy::PrivacyBudget;
use crate::samplers::source::RandomSource;

/// Selection probabilities `P(i) ∝ exp(eps * scores[i] / (2 * sensitivity))`,
/// computed with max-subtraction so large scores cannot overflow.
pub fn discrete_exponential_probabilities(
    scores: &[f64],
    sensitivity: f64,
    eps: &PrivacyBudget,
) -> Result<Vec<f64>> {
    if scores.is_empty() {
        return Err(Error::invalid("need at least one score"));
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::invalid("scores must be finite"));
    }
    if !(sensitivity.is_finite() && sensitivity > 0.0) {
        return Err(Error::invalid(format!(
            "score sensitivity must be positive, got {sensitivity}"
        )));
    }
    let scale = eps.epsilon() / (2.0 * sensitivity);
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = scores.iter().map(|s| (scale * (s - max)).exp()).collect();
    let total: f64 = weights.iter().sum();
    // total >= 1 always: the max-score entry contributes exp(0) = 1.
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Draws an index with probability proportional to
/// `exp(eps * scores[i] / (2 * sensitivity))`. Higher scores are favored;
/// as eps grows the draw concentrates on the argmax.
///
/// Selecting this way is eps-differentially private whenever changing one
/// database entry moves every score by at most `sensitivity`.
pub fn sample_discrete_exponential(
    scores: &[f64],
    sensitivity: f64,
    eps: &PrivacyBudget,
    rng: &mut RandomSource,
) -> Result<usize> {
    let probs = discrete_exponential_probabilities(scores, sensitivity, eps)?;
    let u = rng.next_f64();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return Ok(i);
        }
    }
    // Rounding can leave acc epsilon-short of 1; the tail belongs to the
    // last index.
    Ok(probs.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_probabilities_match_closed_form() {
        // scores (0, ln 3), eps 2, sensitivity 1 -> weights (1, 3).
        let eps = PrivacyBudget::new(2.0).unwrap();
        let p =
            discrete_exponential_probabilities(&[0.0, 3.0f64.ln()], 1.0, &eps).unwrap();
        assert!((p[0] - 0.25).abs() < 1e-12, "{p:?}");
        assert!((p[1] - 0.75).abs() < 1e-12, "{p:?}");
    }

    #[test]
    fn equal_scores_are_uniform() {
        let eps = PrivacyBudget::new(1.0).unwrap();
        let p = discrete_exponential_probabilities(&[2.0; 5], 0.5, &eps).unwrap();
        for pi in p {
            assert!((pi - 0.2).abs() < 1e-15);
        }
    }

    #[test]
    fn huge_epsilon_returns_argmax() {
        let eps = PrivacyBudget::new(1e6).unwrap();
        let scores = [0.3, -1.0, 0.9, 0.2];
        let mut rng = RandomSource::new(21);
        let mut hits = 0;
        let n = 10_000;
        for _ in 0..n {
            if sample_discrete_exponential(&scores, 1.0, &eps, &mut rng).unwrap() == 2 {
                hits += 1;
            }
        }
        assert!(hits as f64 / n as f64 > 0.999, "argmax frequency {}", hits as f64 / n as f64);
    }

    #[test]
    fn extreme_scores_do_not_overflow() {
        let eps = PrivacyBudget::new(1.0).unwrap();
        let p = discrete_exponential_probabilities(&[1e300, 0.0, -1e300], 1.0, &eps).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-15);
        assert!(p.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn empirical_frequencies_match_probabilities() {
        let eps = PrivacyBudget::new(1.5).unwrap();
        let scores = [0.0, 1.0, -0.5, 2.0];
        let probs = discrete_exponential_probabilities(&scores, 1.0, &eps).unwrap();
        let mut rng = RandomSource::new(22);
        let n = 200_000;
        let mut counts = [0usize; 4];
        for _ in 0..n {
            counts[sample_discrete_exponential(&scores, 1.0, &eps, &mut rng).unwrap()] += 1;
        }
        for (c, p) in counts.iter().zip(&probs) {
            let freq = *c as f64 / n as f64;
            assert!((freq - p).abs() < 0.005, "freq {freq} vs prob {p}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let eps = PrivacyBudget::new(1.0).unwrap();
        let mut rng = RandomSource::new(1);
        assert!(sample_discrete_exponential(&[], 1.0, &eps, &mut rng).is_err());
        assert!(sample_discrete_exponential(&[0.0, f64::NAN], 1.0, &eps, &mut rng).is_err());
        assert!(sample_discrete_exponential(&[0.0], 0.0, &eps, &mut rng).is_err());
    }
}
