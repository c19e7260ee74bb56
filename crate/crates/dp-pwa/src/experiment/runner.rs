//! Seeded sweep execution.
//!
//! Every trial owns an independent random stream derived from
//! `(config seed, sweep index, mechanism code, trial index)`, so results do
//! not depend on scheduling: the same config produces the same records
//! whether trials run on one thread or many. The non-private baseline is
//! deterministic and computed once per sweep point.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::config::{build_sweep, ExperimentConfig, ResolvedSweep};
use crate::mechanisms::{
    dp_subgradient_method, mech_data_laplace, mech_exponential, mech_solution_laplace,
    DpSubgradConfig, MechanismId,
};
use crate::problem::instance::ProblemInstance;
use crate::samplers::mcmc::McmcConfig;
use crate::samplers::source::{stable_mix, RandomSource};
use crate::solver::{
    brute_force_optimum, oracle_resolution, projected_subgradient, StepSchedule,
};

/// One mechanism invocation's result row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub mechanism: MechanismId,
    pub sweep_name: String,
    pub sweep_value: f64,
    pub trial: usize,
    pub objective: f64,
    pub true_optimum: f64,
    pub suboptimality: f64,
    /// The experiment's declared budget (what the mechanism was asked to
    /// spend), identical across mechanisms of one run.
    pub epsilon: f64,
    /// This trial's derived stream seed.
    pub seed: u64,
}

/// Per-(mechanism, sweep value) aggregate. `two_sigma` is twice the sample
/// standard deviation of the per-trial objective — the error-bar half-width
/// — not the standard error of the mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub mechanism: MechanismId,
    pub sweep_name: String,
    pub sweep_value: f64,
    pub mean: f64,
    pub two_sigma: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub records: Vec<TrialRecord>,
    pub summary: Vec<SummaryRow>,
}

/// Rayon pool honoring the `DP_PWA_THREADS` cap.
fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    match std::env::var("DP_PWA_THREADS") {
        Ok(raw) => {
            let n = raw
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| {
                    Error::invalid(format!(
                        "DP_PWA_THREADS must be a positive integer, got `{raw}`"
                    ))
                })?;
            builder = builder.num_threads(n);
        }
        Err(std::env::VarError::NotPresent) => {}
        Err(e) => return Err(Error::invalid(format!("DP_PWA_THREADS: {e}"))),
    }
    builder.build().map_err(|e| Error::invalid(format!("thread pool: {e}")))
}

fn per_trial_seed(config_seed: u64, sweep_index: u64, mech: MechanismId, trial: usize) -> u64 {
    stable_mix(&[config_seed, sweep_index, mech.seed_code(), trial as u64])
}

/// Runs one private mechanism once and returns the released point's true
/// objective value. The baseline never goes through here.
fn run_single_trial(
    instance: &ProblemInstance,
    mech: MechanismId,
    config: &ExperimentConfig,
    seed: u64,
) -> Result<f64> {
    let mut rng = RandomSource::new(seed);
    let eps = config.epsilon;
    let value = match mech {
        MechanismId::DataPerturbation => mech_data_laplace(instance, eps, &mut rng)?.value,
        MechanismId::SolutionPerturbation => {
            mech_solution_laplace(instance, eps, None, &mut rng)?.value
        }
        MechanismId::ExponentialSampler => {
            let chain = McmcConfig::for_domain(&instance.domain, config.eta, config.mcmc_steps)?;
            mech_exponential(instance, eps, Some(&chain), &mut rng)?.value
        }
        MechanismId::DpSubgradient => {
            let mut sub = DpSubgradConfig::for_instance(instance, config.k)?;
            sub.record_trace = false;
            dp_subgradient_method(instance, eps, &sub, &mut rng)?.value
        }
        MechanismId::Baseline => unreachable!("baseline is cached per sweep point"),
    };
    Ok(value)
}

fn mean_and_two_sigma(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, 2.0 * var.sqrt())
}

/// Assembles records and summary for a fully materialized value grid.
/// `values` is indexed `[sweep][mechanism][trial]`, flattened.
fn assemble(
    sweep: &ResolvedSweep,
    mechanisms: &[MechanismId],
    runs: usize,
    epsilon: f64,
    config_seed: u64,
    optima: &[f64],
    values: &[f64],
) -> ExperimentResult {
    let mut records = Vec::with_capacity(values.len());
    let mut summary = Vec::with_capacity(sweep.points.len() * mechanisms.len());
    let mut idx = 0;
    for (p, point) in sweep.points.iter().enumerate() {
        for &mech in mechanisms {
            let block = &values[idx..idx + runs];
            for (trial, &objective) in block.iter().enumerate() {
                records.push(TrialRecord {
                    mechanism: mech,
                    sweep_name: sweep.name.to_string(),
                    sweep_value: point.value,
                    trial,
                    objective,
                    true_optimum: optima[p],
                    suboptimality: objective - optima[p],
                    epsilon,
                    seed: per_trial_seed(config_seed, point.index, mech, trial),
                });
            }
            let (mean, two_sigma) = mean_and_two_sigma(block);
            summary.push(SummaryRow {
                mechanism: mech,
                sweep_name: sweep.name.to_string(),
                sweep_value: point.value,
                mean,
                two_sigma,
                runs,
            });
            idx += runs;
        }
    }
    ExperimentResult { records, summary }
}

/// Runs the configured sweep: `runs` trials of every mechanism at every
/// sweep point, in parallel, with the reference optimum computed once per
/// point by exhaustive grid search.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let sweep = build_sweep(config)?;
    let optima = sweep
        .points
        .iter()
        .map(|point| {
            let d = point.instance.objective.dimension();
            brute_force_optimum(&point.instance.objective, &point.instance.domain, oracle_resolution(d))
                .map(|(value, _)| value)
        })
        .collect::<Result<Vec<f64>>>()?;

    // Flat job grid in record order: sweep point, then mechanism, then trial.
    let jobs: Vec<(usize, MechanismId, u64)> = sweep
        .points
        .iter()
        .enumerate()
        .flat_map(|(p, point)| {
            config.mechanisms.iter().flat_map(move |&mech| {
                (0..config.runs)
                    .map(move |trial| (p, mech, per_trial_seed(config.seed, point.index, mech, trial)))
            })
        })
        .collect();

    let pool = thread_pool()?;
    let values = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, mech, seed)| match mech {
                MechanismId::Baseline => Ok(optima[p]),
                _ => run_single_trial(&sweep.points[p].instance, mech, config, seed),
            })
            .collect::<Result<Vec<f64>>>()
    })?;

    Ok(assemble(&sweep, &config.mechanisms, config.runs, config.epsilon, config.seed, &optima, &values))
}

/// Iteration-count study: for each k, the private subgradient method at
/// budget eps (split internally as eps/k) next to the non-private
/// subgradient method run for the same k iterations.
///
/// The non-private rows use the anytime diminishing schedule
/// `alpha_i = (R/G)/sqrt(i)`, whose first k iterates are shared across all
/// k — reporting the best iterate therefore makes the baseline curve
/// nonincreasing in k by construction. Records carry `sweep_name = "k"`.
pub fn run_iteration_study(
    config: &ExperimentConfig,
    k_values: &[usize],
) -> Result<ExperimentResult> {
    config.validate()?;
    if !config.mechanisms.contains(&MechanismId::DpSubgradient) {
        return Err(Error::Config {
            field: "mechanisms".into(),
            message: "iteration studies need DP_SUBGRAD in the mechanism set".into(),
        });
    }
    if config.m.is_sweep() || config.half_width.is_sweep() {
        return Err(Error::Config {
            field: "m".into(),
            message: "iteration studies need a fixed instance; remove sweep lists".into(),
        });
    }
    if k_values.is_empty() {
        return Err(Error::invalid("k_values is empty"));
    }
    if k_values.iter().any(|&k| k == 0) {
        return Err(Error::invalid("k_values must be at least 1"));
    }

    let sweep = build_sweep(config)?;
    let instance = &sweep.points[0].instance;
    let d = instance.objective.dimension();
    let (true_optimum, _) =
        brute_force_optimum(&instance.objective, &instance.domain, oracle_resolution(d))?;

    // One deterministic non-private solve per k.
    let diameter = instance.domain.diameter();
    let lipschitz = instance.objective.lipschitz_bound();
    let schedule = if diameter > 0.0 && lipschitz > 0.0 {
        StepSchedule::scaled_inv_sqrt(diameter / lipschitz)?
    } else {
        StepSchedule::constant(1.0)?
    };
    let baseline_values = k_values
        .iter()
        .map(|&k| {
            projected_subgradient(&instance.objective, &instance.domain, k, &schedule)
                .map(|run| run.best_value)
        })
        .collect::<Result<Vec<f64>>>()?;

    let mechanisms = [MechanismId::DpSubgradient, MechanismId::Baseline];
    let jobs: Vec<(usize, MechanismId, u64)> = k_values
        .iter()
        .enumerate()
        .flat_map(|(i, _)| {
            mechanisms.iter().flat_map(move |&mech| {
                (0..config.runs)
                    .map(move |trial| (i, mech, per_trial_seed(config.seed, i as u64, mech, trial)))
            })
        })
        .collect();

    let pool = thread_pool()?;
    let values = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, mech, seed)| match mech {
                MechanismId::Baseline => Ok(baseline_values[i]),
                MechanismId::DpSubgradient => {
                    let mut rng = RandomSource::new(seed);
                    let mut sub = DpSubgradConfig::for_instance(instance, k_values[i])?;
                    sub.record_trace = false;
                    dp_subgradient_method(instance, config.epsilon, &sub, &mut rng)
                        .map(|out| out.value)
                }
                _ => unreachable!(),
            })
            .collect::<Result<Vec<f64>>>()
    })?;

    let k_sweep = ResolvedSweep {
        name: "k",
        points: k_values
            .iter()
            .enumerate()
            .map(|(i, &k)| crate::experiment::config::SweepPoint {
                index: i as u64,
                value: k as f64,
                instance: instance.clone(),
            })
            .collect(),
    };
    let optima = vec![true_optimum; k_values.len()];
    Ok(assemble(&k_sweep, &mechanisms, config.runs, config.epsilon, config.seed, &optima, &values))
}
