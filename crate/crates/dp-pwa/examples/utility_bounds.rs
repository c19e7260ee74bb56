//! Closed-form suboptimality guarantees next to what simulation actually
//! delivers. Bounds hold in expectation; the slack varies a lot.

use dp_pwa::analysis::{
    bound_dp_subgradient, bound_exponential_mean, bound_solution_perturbation, estimate_c,
    exp_mech_discrete_bounds,
};
use dp_pwa::mechanisms::{
    dp_subgradient_method, mech_exponential, mech_solution_laplace, DpSubgradConfig,
};
use dp_pwa::problem::{gen_gaussian, AdjacencySpec, BoxDomain, ProblemInstance};
use dp_pwa::samplers::RandomSource;
use dp_pwa::solver::{brute_force_optimum, oracle_resolution, StepSchedule};

fn mean_gap<F>(n: usize, f_opt: f64, mut draw: F) -> dp_pwa::Result<f64>
where
    F: FnMut() -> dp_pwa::Result<f64>,
{
    let mut sum = 0.0;
    for _ in 0..n {
        sum += draw()? - f_opt;
    }
    Ok(sum / n as f64)
}

fn main() -> dp_pwa::Result<()> {
    let d = 2;
    let instance = ProblemInstance::new(
        gen_gaussian(d, 8, 2)?,
        BoxDomain::symmetric(d, 1.0)?,
        AdjacencySpec::new(0.1)?,
    )?;
    let eps = 1.0;
    let g = instance.objective.lipschitz_bound();
    let b_max = instance.adjacency.b_max();
    let diameter = instance.domain.diameter();
    let (f_opt, _) =
        brute_force_optimum(&instance.objective, &instance.domain, oracle_resolution(d))?;
    let mut rng = RandomSource::new(9);
    let n = 3000;

    // Solution perturbation: G d^{3/2} delta / eps with delta the per-axis
    // sensitivity. The bound covers the raw (unclamped) release.
    let report = bound_solution_perturbation(g, d, diameter / (d as f64).sqrt(), eps)?;
    let observed = mean_gap(n, f_opt, || {
        let out = mech_solution_laplace(&instance, eps, None, &mut rng)?;
        instance.objective.value(out.aux.raw_point.as_ref().unwrap())
    })?;
    println!("{:32} bound {:8.3}   observed {:8.3}", report.bound_name, report.value, observed);

    // Exponential sampler: C(0,eps) * 2 b_max / eps, with C estimated by
    // volume sampling on this instance.
    let c0 = estimate_c(&instance, 0.0, eps, 20_000, &mut rng)?;
    let report = bound_exponential_mean(b_max, eps, c0.value)?;
    let observed = mean_gap(n, f_opt, || {
        Ok(mech_exponential(&instance, eps, None, &mut rng)?.value)
    })?;
    println!("{:32} bound {:8.3}   observed {:8.3}", report.bound_name, report.value, observed);

    // Private subgradient, best iterate: classical term + selection penalty.
    let k = 100;
    let schedule = StepSchedule::default_for(diameter, g, k)?;
    let report = bound_dp_subgradient(
        diameter,
        g,
        &schedule.steps(k),
        eps,
        k,
        b_max,
        instance.objective.num_pieces(),
    )?;
    let cfg = DpSubgradConfig::for_instance(&instance, k)?;
    let observed = mean_gap(500, f_opt, || {
        let out = dp_subgradient_method(&instance, eps, &cfg, &mut rng)?;
        Ok(out.aux.best_value.unwrap())
    })?;
    println!("{:32} bound {:8.3}   observed {:8.3}", report.bound_name, report.value, observed);

    // Discrete selection guarantees depend only on (sensitivity, eps, m, t).
    let db = exp_mech_discrete_bounds(b_max, eps, instance.objective.num_pieces(), 1.0)?;
    println!(
        "\ndiscrete selection over {} pieces: score deficit < {:.3} w.p. >= {:.3}, mean <= {:.3}",
        instance.objective.num_pieces(),
        db.threshold,
        1.0 - db.tail_probability,
        db.mean_bound
    );
    Ok(())
}
