//! Thin command-line front end over the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dp_pwa::analysis::{
    audit_detection, bound_dp_subgradient, bound_exponential_mean, bound_solution_perturbation,
    detection_margin, estimate_c, gamma_bar, BoundReport,
};
use dp_pwa::experiment::{
    emit_outputs, run_experiment, ExperimentConfig, OutputFormat, SummaryRow,
};
use dp_pwa::mechanisms::{
    dp_subgradient_method, mech_data_laplace, mech_exponential, mech_solution_laplace,
    DpSubgradConfig, MechanismId,
};
use dp_pwa::problem::{AdjacencySpec, BoxDomain, ProblemInstance, PwaObjective};
use dp_pwa::samplers::RandomSource;
use dp_pwa::solver::{projected_subgradient, StepSchedule};
use dp_pwa::Result;

#[derive(Parser)]
#[command(
    name = "dp-pwa",
    about = "Differentially private minimization of piecewise-affine convex objectives",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configured experiment sweep and write result files.
    Run {
        /// Experiment JSON (same field names as the config type).
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Comma-separated subset of csv,json,plotscript.
        #[arg(long, default_value = "csv", value_delimiter = ',')]
        format: Vec<String>,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Empirically attack one mechanism with threshold detectors on a
    /// canonical adjacent instance pair.
    Audit {
        /// One of M_P, M_S, M_E, DP_SUBGRAD, BASELINE.
        #[arg(long)]
        mechanism: String,
        /// Privacy budget the mechanism is run at (and audited against).
        #[arg(long)]
        epsilon: f64,
        /// Runs per database.
        #[arg(long)]
        samples: usize,
    },
    /// Print the closed-form utility guarantees for a config's instance.
    Bounds {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config, out, format, seed } => cmd_run(&config, &out, &format, seed),
        Command::Audit { mechanism, epsilon, samples } => cmd_audit(&mechanism, epsilon, samples),
        Command::Bounds { config } => cmd_bounds(&config),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn print_summary(summary: &[SummaryRow]) {
    println!("{:12} {:>12} {:>12} {:>12} {:>12} {:>6}", "mechanism", "sweep", "value", "mean", "two_sigma", "runs");
    for row in summary {
        println!(
            "{:12} {:>12} {:>12.6} {:>12.6} {:>12.6} {:>6}",
            row.mechanism.token(),
            row.sweep_name,
            row.sweep_value,
            row.mean,
            row.two_sigma,
            row.runs
        );
    }
}

fn cmd_run(
    config_path: &PathBuf,
    out: &PathBuf,
    format: &[String],
    seed: Option<u64>,
) -> Result<ExitCode> {
    let mut config = ExperimentConfig::load(config_path)?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let formats = format
        .iter()
        .map(|s| s.parse::<OutputFormat>())
        .collect::<Result<Vec<_>>>()?;
    let result = run_experiment(&config)?;
    print_summary(&result.summary);
    let written = emit_outputs(&result.records, &result.summary, out, &formats)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

/// Canonical audit pair: f(x) = |x - c| on [-1, 1] with c = +-b_max/2, so
/// the two offset vectors differ by exactly b_max in each entry.
fn audit_pair(b_max: f64) -> Result<(ProblemInstance, ProblemInstance)> {
    let domain = BoxDomain::symmetric(1, 1.0)?;
    let adjacency = AdjacencySpec::new(b_max)?;
    let make = |c: f64| -> Result<ProblemInstance> {
        let objective = PwaObjective::from_rows(vec![vec![1.0], vec![-1.0]], vec![-c, c])?;
        ProblemInstance::new(objective, domain.clone(), adjacency.clone())
    };
    Ok((make(b_max / 2.0)?, make(-b_max / 2.0)?))
}

fn cmd_audit(mechanism: &str, epsilon: f64, samples: usize) -> Result<ExitCode> {
    const AUDIT_B_MAX: f64 = 0.5;
    const AUDIT_SEED: u64 = 7;
    let mech = MechanismId::from_token(mechanism)?;
    let (base, adjacent) = audit_pair(AUDIT_B_MAX)?;
    let mut rng = RandomSource::new(AUDIT_SEED);

    let release = |inst: &ProblemInstance, rng: &mut RandomSource| -> Result<Vec<f64>> {
        match mech {
            MechanismId::DataPerturbation => Ok(mech_data_laplace(inst, epsilon, rng)?.point),
            MechanismId::SolutionPerturbation => {
                Ok(mech_solution_laplace(inst, epsilon, None, rng)?.point)
            }
            MechanismId::ExponentialSampler => Ok(mech_exponential(inst, epsilon, None, rng)?.point),
            MechanismId::DpSubgradient => {
                let cfg = DpSubgradConfig::default_for_instance(inst)?;
                Ok(dp_subgradient_method(inst, epsilon, &cfg, rng)?.point)
            }
            MechanismId::Baseline => {
                // Non-private reference: deterministic solve, no noise.
                let schedule = StepSchedule::default_for(
                    inst.domain.diameter(),
                    inst.objective.lipschitz_bound(),
                    2000,
                )?;
                Ok(projected_subgradient(&inst.objective, &inst.domain, 2000, &schedule)?
                    .best_point)
            }
        }
    };

    let thresholds: Vec<f64> = (-10..=10).map(|i| 0.1 * f64::from(i)).collect();
    let points = audit_detection(release, &base, &adjacent, samples, &thresholds, &mut rng)?;
    let margin = detection_margin(epsilon, samples);

    println!("mechanism {mechanism}, epsilon {epsilon}, {samples} samples per database");
    println!("slack = min(p_fn + e^eps*p_fp, e^eps*p_fn + p_fp) - 1; private => slack >= 0");
    println!("estimation margin {margin:.6}");
    let mut worst: Option<&dp_pwa::analysis::DetectionPoint> = None;
    for p in &points {
        let slack = p.inequality_slack(epsilon);
        if worst.map_or(true, |w| slack < w.inequality_slack(epsilon)) {
            worst = Some(p);
        }
        println!(
            "  rule {:12}  p_fp {:>8.4}  p_fn {:>8.4}  slack {:>10.4}",
            p.threshold_rule, p.p_fp, p.p_fn, slack
        );
    }
    let worst = worst.expect("threshold grid is nonempty");
    let worst_slack = worst.inequality_slack(epsilon);
    if worst_slack < -margin {
        println!(
            "VIOLATION: rule `{}` breaks the detection inequalities by {:.4} (margin {:.4})",
            worst.threshold_rule, -worst_slack, margin
        );
        Ok(ExitCode::from(3))
    } else {
        println!("consistent with {epsilon}-private release (worst slack {worst_slack:.4})");
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_bounds(config_path: &PathBuf) -> Result<ExitCode> {
    const C_ESTIMATE_SAMPLES: usize = 20_000;
    let config = ExperimentConfig::load(config_path)?;
    let sweep = dp_pwa::experiment::build_sweep(&config)?;
    let eps = config.epsilon;

    let mut reports: Vec<BoundReport> = Vec::new();
    for point in &sweep.points {
        let inst = &point.instance;
        let d = inst.objective.dimension();
        let m = inst.objective.num_pieces();
        let lipschitz = inst.objective.lipschitz_bound();
        let b_max = inst.adjacency.b_max();
        let diameter = inst.domain.diameter();
        // Per-coordinate noise scale when the caller certifies the default
        // whole-box sensitivity bound.
        let delta = diameter / (d as f64).sqrt();

        reports.push(bound_solution_perturbation(lipschitz, d, delta, eps)?);

        let mut rng = RandomSource::new(config.seed);
        let c0 = estimate_c(inst, 0.0, eps, C_ESTIMATE_SAMPLES, &mut rng)?;
        reports.push(bound_exponential_mean(b_max, eps, c0.value)?);

        let schedule = if diameter > 0.0 && lipschitz > 0.0 {
            StepSchedule::default_for(diameter, lipschitz, config.k)?
        } else {
            StepSchedule::constant(1.0)?
        };
        reports.push(bound_dp_subgradient(
            diameter,
            lipschitz,
            &schedule.steps(config.k),
            eps,
            config.k,
            b_max,
            m,
        )?);

        let eps_step = eps / config.k as f64;
        reports.push(BoundReport {
            bound_name: "per_step_selection_gap".to_string(),
            value: gamma_bar(eps_step, b_max, m)?,
            inputs: [("eps_step", eps_step), ("b_max", b_max), ("m", m as f64)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        });
    }
    println!("{}", serde_json::to_string_pretty(&reports)?);
    Ok(ExitCode::SUCCESS)
}
