//! End-to-end acceptance gate. Each test is one criterion with its stated
//! tolerance and runtime budget; each prints a single PASS line with the
//! measured quantities (visible under --nocapture).

use std::time::{Duration, Instant};

use dp_pwa::analysis::{
    audit_detection, audit_sensitivity_bruteforce, bound_dp_subgradient, bound_exponential_mean,
    bound_solution_perturbation, detection_lower_bound, detection_margin, estimate_c_with_fopt,
    exp_mech_discrete_bounds, gamma_bar,
};
use dp_pwa::experiment::{run_experiment, ExperimentConfig, SummaryRow};
use dp_pwa::mechanisms::{
    dp_subgradient_method, mech_data_laplace, mech_exponential, mech_solution_laplace,
    private_subgradient_index, DpSubgradConfig, MechanismId,
};
use dp_pwa::problem::{
    gen_gaussian, gen_resource_allocation, AdjacencySpec, BoxDomain, PrivacyBudget,
    ProblemInstance, PwaObjective, ResourceAllocationInstance,
};
use dp_pwa::samplers::{sample_discrete_exponential, sample_vector_laplace, RandomSource};
use dp_pwa::solver::{brute_force_optimum, oracle_resolution, StepSchedule};

fn budget(start: Instant, limit: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(elapsed <= limit, "{what} took {elapsed:?}, budget {limit:?}");
}

fn gaussian_instance(d: usize, m: usize, seed: u64, b_max: f64) -> ProblemInstance {
    ProblemInstance::new(
        gen_gaussian(d, m, seed).unwrap(),
        BoxDomain::symmetric(d, 1.0).unwrap(),
        AdjacencySpec::new(b_max).unwrap(),
    )
    .unwrap()
}

/// f(x) = |x - center| on [-1, 1]; two of these with centers +-b_max/2 are
/// adjacent with offsets differing by exactly b_max.
fn abs_instance(center: f64, b_max: f64) -> ProblemInstance {
    ProblemInstance::new(
        PwaObjective::from_rows(vec![vec![1.0], vec![-1.0]], vec![-center, center]).unwrap(),
        BoxDomain::symmetric(1, 1.0).unwrap(),
        AdjacencySpec::new(b_max).unwrap(),
    )
    .unwrap()
}

#[test]
fn a01_offset_sensitivity_attains_adjacency_bound() {
    let start = Instant::now();
    let b_max = 0.5;
    let mut rng = RandomSource::new(101);
    let worst =
        audit_sensitivity_bruteforce(2, 6, 1000, 1000, &AdjacencySpec::new(b_max).unwrap(), &mut rng)
            .unwrap();
    assert!(
        (b_max - 1e-9..=b_max + 1e-12).contains(&worst),
        "worst objective shift {worst} outside [{}, {}]",
        b_max - 1e-9,
        b_max + 1e-12
    );
    budget(start, Duration::from_secs(10), "sensitivity audit");
    println!("PASS objective sensitivity: worst shift {worst} in band around b_max={b_max}");
}

#[test]
fn a02_vector_laplace_norm_matches_moment() {
    let start = Instant::now();
    let n = 1_000_000;
    let mut rng = RandomSource::new(202);
    for (d, delta2, eps) in [(1usize, 1.0, 1.0), (3, 1.0, 0.5), (5, 2.0, 0.1)] {
        let pb = PrivacyBudget::new(eps).unwrap();
        let mean: f64 = (0..n)
            .map(|_| {
                let w = sample_vector_laplace(d, delta2, &pb, &mut rng).unwrap();
                w.iter().map(|v| v * v).sum::<f64>().sqrt()
            })
            .sum::<f64>()
            / n as f64;
        let theory = d as f64 * delta2 / eps;
        let rel = (mean - theory).abs() / theory;
        assert!(rel < 0.02, "d={d} delta2={delta2} eps={eps}: E||w||={mean} vs {theory}");
        println!("PASS noise norm (d={d}, delta2={delta2}, eps={eps}): {mean:.4} vs {theory} (rel {rel:.5})");
    }
    budget(start, Duration::from_secs(30), "vector laplace moments");
}

#[test]
fn a03_discrete_exponential_matches_softmax() {
    let start = Instant::now();
    let m = 8;
    let draws = 1_000_000;
    let pb = PrivacyBudget::new(1.0).unwrap();
    let mut rng = RandomSource::new(303);
    let mut worst_tv = 0.0f64;
    for _ in 0..20 {
        let scores: Vec<f64> = (0..m).map(|_| rng.next_gaussian()).collect();
        // Analytic softmax at eps/(2*sens) = 0.5.
        let logits: Vec<f64> = scores.iter().map(|s| 0.5 * s).collect();
        let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let z: f64 = logits.iter().map(|l| (l - max).exp()).sum();
        let probs: Vec<f64> = logits.iter().map(|l| (l - max).exp() / z).collect();

        let mut counts = vec![0usize; m];
        for _ in 0..draws {
            counts[sample_discrete_exponential(&scores, 1.0, &pb, &mut rng).unwrap()] += 1;
        }
        let tv: f64 = counts
            .iter()
            .zip(&probs)
            .map(|(c, p)| (*c as f64 / draws as f64 - p).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv < 0.01, "TV {tv} on scores {scores:?}");
        worst_tv = worst_tv.max(tv);
    }
    budget(start, Duration::from_secs(60), "discrete exponential frequencies");
    println!("PASS selection law: worst TV over 20 score vectors = {worst_tv:.5} < 0.01");
}

#[test]
fn a04_discrete_selection_tail_and_mean_bounds() {
    let start = Instant::now();
    let draws = 100_000;
    let mut rng = RandomSource::new(404);
    for (sens, eps, m) in [(1.0, 1.0, 8usize), (0.5, 2.0, 16), (2.0, 0.5, 5)] {
        let pb = PrivacyBudget::new(eps).unwrap();
        let scores: Vec<f64> = (0..m).map(|_| rng.next_gaussian()).collect();
        let best = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let bounds = exp_mech_discrete_bounds(sens, eps, m, 1.0).unwrap();

        let mut deficit_sum = 0.0;
        let mut tail_hits = 0usize;
        for _ in 0..draws {
            let i = sample_discrete_exponential(&scores, sens, &pb, &mut rng).unwrap();
            let deficit = best - scores[i];
            deficit_sum += deficit;
            if deficit >= bounds.threshold {
                tail_hits += 1;
            }
        }
        let mean = deficit_sum / draws as f64;
        let tail = tail_hits as f64 / draws as f64;
        let p = bounds.tail_probability; // e^{-1}
        let se = (p * (1.0 - p) / draws as f64).sqrt();
        assert!(mean <= bounds.mean_bound, "mean deficit {mean} > {}", bounds.mean_bound);
        assert!(tail <= p + 3.0 * se, "tail {tail} > {} + 3se", p);
        println!(
            "PASS selection guarantees (sens={sens}, eps={eps}, m={m}): mean {mean:.4} <= {:.4}, tail {tail:.4} <= {:.4}",
            bounds.mean_bound,
            p + 3.0 * se
        );
    }
    budget(start, Duration::from_secs(60), "discrete selection bounds");
}

#[test]
fn a05_solution_perturbation_mean_bound() {
    let start = Instant::now();
    let instance = gaussian_instance(2, 5, 2, 0.1);
    let eps = 1.0;
    let d = 2usize;
    let g = instance.objective.lipschitz_bound();
    let delta = instance.domain.diameter() / (d as f64).sqrt();
    let bound = bound_solution_perturbation(g, d, delta, eps).unwrap().value;
    let (f_opt, _) =
        brute_force_optimum(&instance.objective, &instance.domain, oracle_resolution(d)).unwrap();

    let runs = 10_000;
    let mut rng = RandomSource::new(505);
    let mut sum = 0.0;
    for _ in 0..runs {
        let out = mech_solution_laplace(&instance, eps, None, &mut rng).unwrap();
        let raw = out.aux.raw_point.as_ref().unwrap();
        sum += instance.objective.value(raw).unwrap() - f_opt;
    }
    let mean = sum / runs as f64;
    assert!(mean <= bound, "raw mean suboptimality {mean} > bound {bound}");
    budget(start, Duration::from_secs(60), "solution perturbation bound");
    println!("PASS solution perturbation: raw mean gap {mean:.4} <= G d^1.5 delta/eps = {bound:.4}");
}

#[test]
fn a06_exponential_sampler_closed_form_and_mean_bound() {
    let start = Instant::now();
    // f(x) = x on [0, 1], eps/(2 b_max) = 1: the target law is a unit-rate
    // truncated exponential with known mean.
    let eps = 1.0;
    let b_max = 0.5;
    let instance = ProblemInstance::new(
        PwaObjective::from_rows(vec![vec![1.0]], vec![0.0]).unwrap(),
        BoxDomain::new(vec![0.0], vec![1.0]).unwrap(),
        AdjacencySpec::new(b_max).unwrap(),
    )
    .unwrap();
    let exact_mean = 0.41802329313067355; // 1 - 1/(e-1), rate-1 on [0,1]
    let f_opt = 0.0;

    let runs = 10_000;
    let mut rng = RandomSource::new(606);
    let mut values = Vec::with_capacity(runs);
    for _ in 0..runs {
        values.push(mech_exponential(&instance, eps, None, &mut rng).unwrap().value);
    }
    let mean = values.iter().sum::<f64>() / runs as f64;
    assert!(
        (mean - exact_mean).abs() < 0.05,
        "chain mean {mean} vs closed form {exact_mean}"
    );

    let c0 = estimate_c_with_fopt(&instance, f_opt, 0.0, eps, 20_000, &mut rng).unwrap();
    let bound = bound_exponential_mean(b_max, eps, c0.value).unwrap().value;
    assert!(mean - f_opt <= bound, "mean gap {mean} > C0 bound {bound}");

    // Tail guarantee at two levels: P(gap >= gamma) <= C(gamma) e^{-eps gamma / 2 b_max}.
    for gamma in [0.2, 0.5] {
        let c = estimate_c_with_fopt(&instance, f_opt, gamma, eps, 20_000, &mut rng).unwrap();
        let tail_bound = c.value * (-eps * gamma / (2.0 * b_max)).exp();
        let tail =
            values.iter().filter(|v| **v - f_opt >= gamma).count() as f64 / runs as f64;
        let se = (tail_bound.min(1.0) * (1.0 - tail_bound.min(1.0)).max(0.0) / runs as f64).sqrt();
        assert!(tail <= tail_bound + 3.0 * se, "tail {tail} at gamma={gamma} > {tail_bound}");
    }
    budget(start, Duration::from_secs(300), "exponential sampler closed form");
    println!("PASS continuous sampler: mean {mean:.4} vs exact {exact_mean:.4}, gap bound {bound:.4} holds with tails");
}

#[test]
fn a07_private_descent_bound_and_per_step_gap() {
    let start = Instant::now();
    let instance = gaussian_instance(2, 10, 5, 0.1);
    let eps = 1.0;
    let k = 100;
    let g = instance.objective.lipschitz_bound();
    let diameter = instance.domain.diameter();
    let (f_opt, _) =
        brute_force_optimum(&instance.objective, &instance.domain, oracle_resolution(2)).unwrap();

    let schedule = StepSchedule::default_for(diameter, g, k).unwrap();
    let bound = bound_dp_subgradient(
        diameter,
        g,
        &schedule.steps(k),
        eps,
        k,
        instance.adjacency.b_max(),
        instance.objective.num_pieces(),
    )
    .unwrap()
    .value;

    let runs = 1000;
    let cfg = DpSubgradConfig::for_instance(&instance, k).unwrap();
    let mut rng = RandomSource::new(707);
    let mut sum = 0.0;
    for _ in 0..runs {
        let out = dp_subgradient_method(&instance, eps, &cfg, &mut rng).unwrap();
        sum += out.aux.best_value.unwrap() - f_opt;
    }
    let mean_best_gap = sum / runs as f64;
    assert!(mean_best_gap <= bound, "best-iterate mean gap {mean_best_gap} > bound {bound}");

    // Per-selection score deficit at eps/k, against gamma_bar.
    let eps_step = eps / k as f64;
    let gbar = gamma_bar(eps_step, instance.adjacency.b_max(), instance.objective.num_pieces())
        .unwrap();
    let x0 = instance.domain.center();
    let piece_values = instance.objective.piece_values(&x0).unwrap();
    let best = piece_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let draws = 100_000;
    let mut deficit = 0.0;
    for _ in 0..draws {
        let i = private_subgradient_index(
            &instance.objective,
            &instance.adjacency,
            &x0,
            eps_step,
            &mut rng,
        )
        .unwrap();
        deficit += best - piece_values[i];
    }
    let mean_gamma = deficit / draws as f64;
    assert!(mean_gamma <= gbar, "per-step E[gamma] {mean_gamma} > gamma_bar {gbar}");
    budget(start, Duration::from_secs(300), "private descent bounds");
    println!("PASS private descent: mean best gap {mean_best_gap:.4} <= {bound:.4}, per-step gap {mean_gamma:.4} <= {gbar:.4}");
}

#[test]
fn a08_detection_floor_and_data_perturbation_audit() {
    let start = Instant::now();
    let floor = detection_lower_bound(0.1, 0.05).unwrap();
    assert!((floor - 0.9447414540962176).abs() < 1e-15, "floor {floor}");
    assert!((floor - 0.94).abs() <= 0.005);

    let eps = 0.5;
    let b_max = 0.5;
    let base = abs_instance(b_max / 2.0, b_max);
    let adjacent = abs_instance(-b_max / 2.0, b_max);
    let n = 100_000;
    let thresholds: Vec<f64> = (-10..=10).map(|i| 0.1 * f64::from(i)).collect();
    let mut rng = RandomSource::new(808);
    let points = audit_detection(
        |inst, rng| Ok(mech_data_laplace(inst, eps, rng)?.point),
        &base,
        &adjacent,
        n,
        &thresholds,
        &mut rng,
    )
    .unwrap();
    let margin = detection_margin(eps, n);
    let worst = points
        .iter()
        .map(|p| p.inequality_slack(eps))
        .fold(f64::INFINITY, f64::min);
    assert!(worst >= -margin, "detector slack {worst} below -margin {margin}");
    budget(start, Duration::from_secs(120), "detection audit");
    println!("PASS detection: floor {floor:.10}; data perturbation worst slack {worst:.4} >= -{margin:.4}");
}

/// Exact allocation optimum by vertex enumeration: some agents saturated,
/// at most one partial. Independent of the greedy fill.
fn lp_best_utility(gains: &[f64], caps: &[f64], x: f64) -> f64 {
    let n = gains.len();
    let mut best = 0.0f64;
    for mask in 0u32..(1 << n) {
        let mut used = 0.0;
        let mut util = 0.0;
        for i in 0..n {
            if mask & (1 << i) != 0 {
                used += caps[i];
                util += gains[i] * caps[i];
            }
        }
        if used > x {
            continue;
        }
        best = best.max(util);
        for j in 0..n {
            if mask & (1 << j) == 0 {
                let take = (x - used).min(caps[j]);
                best = best.max(util + gains[j] * take);
            }
        }
    }
    best
}

#[test]
fn a09_resource_reduction_matches_lp_oracle() {
    let start = Instant::now();
    let mut rng = RandomSource::new(909);
    for _ in 0..20 {
        let n = 1 + (rng.next_f64() * 5.0) as usize; // 1..=5
        let gains: Vec<f64> = (0..n).map(|_| 3.0 * rng.next_f64()).collect();
        let caps: Vec<f64> = (0..n).map(|_| 2.0 * rng.next_f64()).collect();
        let price = 2.0 * rng.next_f64();
        let alloc = ResourceAllocationInstance::new(gains.clone(), caps.clone(), price).unwrap();
        let objective = gen_resource_allocation(&alloc).unwrap();
        let total_cap: f64 = caps.iter().sum();
        for _ in 0..50 {
            let x = rng.next_f64() * 1.2 * total_cap;
            let direct = price * x - lp_best_utility(&gains, &caps, x);
            let via_pieces = objective.value(&[x]).unwrap();
            assert!(
                (direct - via_pieces).abs() < 1e-9,
                "x={x}: pieces {via_pieces} vs LP {direct} (gains {gains:?}, caps {caps:?}, price {price})"
            );
        }
    }
    budget(start, Duration::from_secs(5), "resource allocation reduction");
    println!("PASS allocation reduction: 20 instances x 50 points agree with the LP vertex oracle");
}

fn rows_for<'a>(
    summary: &'a [SummaryRow],
    mech: MechanismId,
) -> Vec<&'a SummaryRow> {
    summary.iter().filter(|r| r.mechanism == mech).collect()
}

#[test]
fn a10_default_config_trends() {
    let start = Instant::now();
    let all = [
        MechanismId::DataPerturbation,
        MechanismId::SolutionPerturbation,
        MechanismId::ExponentialSampler,
        MechanismId::DpSubgradient,
        MechanismId::Baseline,
    ];

    // (a) nested piece sweep: each mechanism's mean objective curve rises
    // with m (more pieces raise the max pointwise). Error bars are the
    // summary's own 2-sigma columns.
    let cfg_m =
        ExperimentConfig::from_json_str(r#"{"m": [5, 10, 20, 40], "runs": 1000}"#).unwrap();
    let result_m = run_experiment(&cfg_m).unwrap();
    for mech in all {
        let rows = rows_for(&result_m.summary, mech);
        assert_eq!(rows.len(), 4);
        for w in rows.windows(2) {
            let slack = w[0].two_sigma + w[1].two_sigma;
            assert!(
                w[1].mean >= w[0].mean - slack,
                "{mech} mean fell from {} (m={}) to {} (m={}) beyond 2-sigma {slack}",
                w[0].mean,
                w[0].sweep_value,
                w[1].mean,
                w[1].sweep_value
            );
        }
    }

    // (b) box half-width sweep: private descent wins at every c; (c) the
    // exact optimum can only fall as the box grows (tolerance covers the
    // grid oracle's per-box refinement error).
    let cfg_c = ExperimentConfig::from_json_str(
        r#"{"half_width": [0.5, 1.0, 2.0, 4.0], "runs": 1000}"#,
    )
    .unwrap();
    let result_c = run_experiment(&cfg_c).unwrap();
    let dp_rows = rows_for(&result_c.summary, MechanismId::DpSubgradient);
    for mech in MechanismId::ALL_PRIVATE {
        if mech == MechanismId::DpSubgradient {
            continue;
        }
        let rows = rows_for(&result_c.summary, mech);
        for (dp, other) in dp_rows.iter().zip(&rows) {
            let slack = dp.two_sigma + other.two_sigma;
            assert!(
                dp.mean <= other.mean + slack,
                "{mech} mean {} beats private descent {} at c={}",
                other.mean,
                dp.mean,
                dp.sweep_value
            );
        }
    }
    let optima = rows_for(&result_c.summary, MechanismId::Baseline);
    for w in optima.windows(2) {
        assert!(
            w[1].mean <= w[0].mean + 1e-6,
            "optimum rose from {} (c={}) to {} (c={})",
            w[0].mean,
            w[0].sweep_value,
            w[1].mean,
            w[1].sweep_value
        );
    }
    budget(start, Duration::from_secs(900), "default-config trends");
    println!(
        "PASS trends: means rise with m for all 5 curves, private descent lowest at every c, optimum falls with c"
    );
}

#[test]
fn a11_cli_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    std::fs::write(&config_path, r#"{"m": [5, 10], "runs": 50, "epsilon": 0.5}"#).unwrap();

    let run = |out: &str| {
        let out_dir = dir.path().join(out);
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_dp-pwa"))
            .args(["run", "--config"])
            .arg(&config_path)
            .arg("--out")
            .arg(&out_dir)
            .args(["--format", "csv"])
            .stdout(std::process::Stdio::null())
            .status()
            .unwrap();
        assert!(status.success(), "run into {out} failed");
        std::fs::read(out_dir.join("trials.csv")).unwrap()
    };
    let first = run("first");
    let second = run("second");
    assert!(!first.is_empty());
    assert_eq!(first, second, "two runs of the same config differ");
    println!("PASS determinism: repeated runs emit byte-identical trials.csv ({} bytes)", first.len());
}
