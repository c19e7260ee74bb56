use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::domain::BoxDomain;
use crate::problem::instance::ProblemInstance;
use crate::problem::objective::{AffinePiece, PwaObjective};
use crate::problem::privacy::AdjacencySpec;
use crate::samplers::source::RandomSource;
use crate::samplers::uniform::sample_box_uniform;

/// Lower bound on p_fp for any detector of an adjacent-database change with
/// false-negative rate `p_fn` against an eps-private release:
/// `max(1 - e^eps * p_fn, e^{-eps} * (1 - p_fn))`.
///
/// Any test beating this bound would certify a privacy violation.
pub fn detection_lower_bound(eps: f64, p_fn: f64) -> Result<f64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::invalid(format!("epsilon must be positive, got {eps}")));
    }
    if !(0.0..=1.0).contains(&p_fn) {
        return Err(Error::invalid(format!("p_fn must be in [0,1], got {p_fn}")));
    }
    Ok((1.0 - eps.exp() * p_fn).max((-eps).exp() * (1.0 - p_fn)))
}

/// Empirical operating point of one threshold detector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionPoint {
    /// Human-readable decision rule, e.g. `x[0] > 0.25`.
    pub threshold_rule: String,
    /// Fraction of base-database runs the rule flagged (false positives).
    pub p_fp: f64,
    /// Fraction of adjacent-database runs the rule missed (false negatives).
    pub p_fn: f64,
}

impl DetectionPoint {
    /// Smallest slack across the two private-release inequalities
    /// `p_fn + e^eps p_fp >= 1` and `e^eps p_fn + p_fp >= 1`.
    /// Negative slack beyond the estimation margin indicates a violation.
    pub fn inequality_slack(&self, eps: f64) -> f64 {
        let e = eps.exp();
        (self.p_fn + e * self.p_fp - 1.0).min(e * self.p_fn + self.p_fp - 1.0)
    }
}

/// Conservative estimation margin for [`DetectionPoint::inequality_slack`]:
/// three binomial standard errors (at worst-case p = 1/2) propagated
/// through the e^eps-weighted side of the inequality.
pub fn detection_margin(eps: f64, n_samples: usize) -> f64 {
    3.0 * 0.5 / (n_samples as f64).sqrt() * (1.0 + eps.exp())
}

/// Runs a mechanism `n_samples` times on each of two adjacent instances and
/// scores every threshold detector in `rule_grid` on the first output
/// coordinate (both orientations per threshold). For an eps-private
/// mechanism every returned point satisfies the detection inequalities up
/// to [`detection_margin`]; a decisive violation falsifies the privacy
/// claim.
pub fn audit_detection<M>(
    mut mechanism: M,
    instance_base: &ProblemInstance,
    instance_adjacent: &ProblemInstance,
    n_samples: usize,
    rule_grid: &[f64],
    rng: &mut RandomSource,
) -> Result<Vec<DetectionPoint>>
where
    M: FnMut(&ProblemInstance, &mut RandomSource) -> Result<Vec<f64>>,
{
    if n_samples == 0 {
        return Err(Error::invalid("need at least one sample per database"));
    }
    if rule_grid.is_empty() {
        return Err(Error::invalid("threshold grid is empty"));
    }
    if instance_base.domain != instance_adjacent.domain {
        return Err(Error::invalid("audit instances must share the same box"));
    }
    if !instance_base
        .adjacency
        .are_adjacent(&instance_base.objective, &instance_adjacent.objective)
    {
        return Err(Error::invalid(
            "audit instances are not adjacent: same rows, offsets within b_max required",
        ));
    }

    let mut first_coord = |inst: &ProblemInstance, rng: &mut RandomSource| -> Result<Vec<f64>> {
        (0..n_samples)
            .map(|_| {
                let out = mechanism(inst, rng)?;
                out.first().copied().ok_or_else(|| Error::invalid("mechanism returned no point"))
            })
            .collect()
    };
    let base = first_coord(instance_base, rng)?;
    let adjacent = first_coord(instance_adjacent, rng)?;

    let n = n_samples as f64;
    let mut points = Vec::with_capacity(2 * rule_grid.len());
    for &tau in rule_grid {
        let above_base = base.iter().filter(|v| **v > tau).count() as f64 / n;
        let above_adj = adjacent.iter().filter(|v| **v > tau).count() as f64 / n;
        // Flag "adjacent" when the first coordinate exceeds tau…
        points.push(DetectionPoint {
            threshold_rule: format!("x[0] > {tau}"),
            p_fp: above_base,
            p_fn: 1.0 - above_adj,
        });
        // …and the reversed orientation.
        points.push(DetectionPoint {
            threshold_rule: format!("x[0] <= {tau}"),
            p_fp: 1.0 - above_base,
            p_fn: above_adj,
        });
    }
    Ok(points)
}

/// Exhaustive randomized check that the objective moves by at most `b_max`
/// pointwise between adjacent databases.
///
/// Draws `n_pairs` random adjacent objective pairs (random rows, offsets
/// shifted by uniform perturbations within the adjacency bound) plus the
/// extreme pair shifted by exactly `b_max` in every offset, evaluates each
/// pair at `n_points` random points of `[-1, 1]^d`, and returns the largest
/// observed `|f(x, D) - f(x, D')|`. The result can never exceed `b_max` and
/// reaches it on the forced extreme pair.
pub fn audit_sensitivity_bruteforce(
    d: usize,
    m: usize,
    n_pairs: usize,
    n_points: usize,
    adj: &AdjacencySpec,
    rng: &mut RandomSource,
) -> Result<f64> {
    if d == 0 || m == 0 {
        return Err(Error::invalid("need d >= 1 and m >= 1"));
    }
    if n_points == 0 {
        return Err(Error::invalid("need at least one evaluation point"));
    }
    let b_max = adj.b_max();
    let domain = BoxDomain::symmetric(d, 1.0)?;
    let mut worst = 0.0f64;

    // Pair index n_pairs is the forced extreme: a uniform +b_max shift,
    // which moves the max by exactly b_max at every x.
    for pair in 0..=n_pairs {
        let pieces: Vec<AffinePiece> = (0..m)
            .map(|_| {
                let a = (0..d).map(|_| rng.next_gaussian()).collect();
                AffinePiece::new(a, rng.next_gaussian())
            })
            .collect();
        let base = PwaObjective::new(pieces)?;
        let shifts: Vec<f64> = if pair == n_pairs {
            vec![b_max; m]
        } else {
            (0..m).map(|_| (2.0 * rng.next_f64() - 1.0) * b_max).collect()
        };
        // `b + shift` can round one ulp past the adjacency bound when
        // shift = +-b_max; walk the offset back until the realized gap is
        // inside it (a couple of ulps at most, so the extreme pair still
        // attains the bound to within float resolution).
        let offsets: Vec<f64> = base
            .pieces()
            .iter()
            .zip(&shifts)
            .map(|(p, s)| {
                let mut q = p.b + s;
                while (q - p.b).abs() > b_max {
                    q = if q > p.b { q.next_down() } else { q.next_up() };
                }
                q
            })
            .collect();
        let rows: Vec<Vec<f64>> = base.pieces().iter().map(|p| p.a.clone()).collect();
        let shifted = PwaObjective::from_rows(rows, offsets)?;
        debug_assert!(adj.are_adjacent(&base, &shifted));

        for _ in 0..n_points {
            let x = sample_box_uniform(&domain, rng);
            let gap = (base.value(&x)? - shifted.value(&x)?).abs();
            if gap > worst {
                worst = gap;
            }
        }
    }
    Ok(worst)
}
