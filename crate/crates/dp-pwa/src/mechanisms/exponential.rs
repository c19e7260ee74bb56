use crate::error::Result;
use crate::mechanisms::{AuxData, MechanismId, MechanismOutput};
use crate::problem::instance::ProblemInstance;
use crate::problem::privacy::PrivacyBudget;
use crate::samplers::mcmc::{metropolis_run, McmcConfig};
use crate::samplers::source::RandomSource;

/// M_E: sample the release from density proportional to
/// `exp(-eps * f(x) / (2 * b_max))` on the box.
///
/// The continuous exponential mechanism with score `-f`; the offset vector
/// moves f pointwise by at most b_max between adjacent datasets, so the
/// `2 * b_max` denominator yields eps-privacy. One fresh Metropolis chain
/// per call approximates an exact draw; `config = None` uses the
/// domain-scaled default chain.
pub fn mech_exponential(
    instance: &ProblemInstance,
    eps: f64,
    config: Option<&McmcConfig>,
    rng: &mut RandomSource,
) -> Result<MechanismOutput> {
    let budget = PrivacyBudget::new(eps)?;
    let default_cfg;
    let cfg = match config {
        Some(c) => c,
        None => {
            default_cfg = McmcConfig::default_for(&instance.domain)?;
            &default_cfg
        }
    };

    let scale = budget.epsilon() / (2.0 * instance.adjacency.b_max());
    let pieces = instance.objective.pieces().to_vec();
    // Raw max loop: the chain hands in points it generated itself, so the
    // dimension checks in `evaluate` would be dead weight per step.
    let log_density = move |x: &[f64]| {
        let mut best = f64::NEG_INFINITY;
        for p in &pieces {
            let v = p.value_at(x);
            if v > best {
                best = v;
            }
        }
        -scale * best
    };

    let (point, stats) = metropolis_run(log_density, &instance.domain, cfg, rng)?;
    let (value, _) = instance.objective.evaluate(&point)?;

    Ok(MechanismOutput {
        mechanism: MechanismId::ExponentialSampler,
        point,
        value,
        epsilon_spent: eps,
        aux: AuxData {
            mcmc_acceptance_rate: Some(stats.acceptance_rate()),
            ..AuxData::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::domain::BoxDomain;
    use crate::problem::objective::PwaObjective;
    use crate::problem::privacy::AdjacencySpec;

    fn line_on_unit_interval() -> ProblemInstance {
        // f(x) = x on [0, 1]; with b_max = 1 and eps = 2 the target is
        // exp(-x) truncated to [0, 1].
        let objective = PwaObjective::from_rows(vec![vec![1.0]], vec![0.0]).unwrap();
        let domain = BoxDomain::new(vec![0.0], vec![1.0]).unwrap();
        ProblemInstance::new(objective, domain, AdjacencySpec::new(1.0).unwrap()).unwrap()
    }

    #[test]
    fn matches_truncated_exponential_mean() {
        let instance = line_on_unit_interval();
        let mut rng = RandomSource::new(31);
        let n = 2000;
        let mut total = 0.0;
        for _ in 0..n {
            let out = mech_exponential(&instance, 2.0, None, &mut rng).unwrap();
            total += out.point[0];
        }
        let mean = total / n as f64;
        // Mean of rate-1 exponential truncated to [0, 1]:
        // 1/(e-1) - 1/e + ... = 0.41802329313067355.
        assert!((mean - 0.41802329313067355).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn larger_budget_concentrates_near_minimizer() {
        let instance = line_on_unit_interval();
        let mean_at = |eps: f64, seed: u64| {
            let mut rng = RandomSource::new(seed);
            let n = 1000;
            let mut total = 0.0;
            for _ in 0..n {
                total += mech_exponential(&instance, eps, None, &mut rng).unwrap().point[0];
            }
            total / n as f64
        };
        let loose = mean_at(2.0, 32);
        let tight = mean_at(20.0, 32);
        assert!(tight < loose - 0.2, "tight {tight} loose {loose}");
        // Rate-10 exponential truncated to [0, 1] has mean ~0.09995.
        assert!((tight - 0.1).abs() < 0.03, "tight {tight}");
    }

    #[test]
    fn constant_objective_samples_uniformly() {
        let objective =
            PwaObjective::from_rows(vec![vec![0.0, 0.0]], vec![1.0]).unwrap();
        let domain = BoxDomain::symmetric(2, 1.0).unwrap();
        let instance =
            ProblemInstance::new(objective, domain, AdjacencySpec::new(0.5).unwrap()).unwrap();
        let mut rng = RandomSource::new(33);
        let n = 3000;
        let mut sums = [0.0f64; 2];
        for _ in 0..n {
            let out = mech_exponential(&instance, 1.0, None, &mut rng).unwrap();
            assert!(instance.domain.contains(&out.point));
            sums[0] += out.point[0];
            sums[1] += out.point[1];
        }
        for s in sums {
            let mean = s / n as f64;
            assert!(mean.abs() < 0.05, "mean {mean}");
        }
    }

    #[test]
    fn reports_acceptance_and_budget() {
        let instance = line_on_unit_interval();
        let mut rng = RandomSource::new(34);
        let out = mech_exponential(&instance, 0.5, None, &mut rng).unwrap();
        let rate = out.aux.mcmc_acceptance_rate.unwrap();
        assert!(rate > 0.0 && rate < 1.0, "rate {rate}");
        assert_eq!(out.epsilon_spent.to_bits(), 0.5f64.to_bits());
        assert!(mech_exponential(&instance, 0.0, None, &mut rng).is_err());
    }

    #[test]
    fn honors_caller_chain_config() {
        let instance = line_on_unit_interval();
        let cfg = McmcConfig::new(50, 0.05).unwrap();
        let mut rng = RandomSource::new(35);
        let out = mech_exponential(&instance, 1.0, Some(&cfg), &mut rng).unwrap();
        // 50 steps of scale-0.05 proposals from the center can move at
        // most 2.5 in total; with high probability far less.
        assert!((out.point[0] - 0.5).abs() <= 2.5);
        assert!(instance.domain.contains(&out.point));
    }
}
