//! The private subgradient method, opened up: per-step private piece
//! selection at eps/k, the iterate trace, and the non-private reference.

use dp_pwa::mechanisms::{dp_subgradient_method, private_subgradient_index, DpSubgradConfig};
use dp_pwa::problem::{gen_gaussian, AdjacencySpec, BoxDomain, ProblemInstance};
use dp_pwa::samplers::RandomSource;
use dp_pwa::solver::{brute_force_optimum, oracle_resolution, projected_subgradient};

fn main() -> dp_pwa::Result<()> {
    let d = 2;
    let instance = ProblemInstance::new(
        gen_gaussian(d, 10, 5)?,
        BoxDomain::symmetric(d, 1.0)?,
        AdjacencySpec::new(0.1)?,
    )?;
    let eps = 1.0;
    let k = 100;
    let (f_opt, _) =
        brute_force_optimum(&instance.objective, &instance.domain, oracle_resolution(d))?;

    // One private selection by hand: at the center, which piece does the
    // eps/k-budget exponential selection pick vs the true argmax?
    let mut rng = RandomSource::new(11);
    let x0 = instance.domain.center();
    let (_, true_active) = instance.objective.evaluate(&x0)?;
    let mut picks = vec![0usize; instance.objective.num_pieces()];
    for _ in 0..1000 {
        let i = private_subgradient_index(
            &instance.objective,
            &instance.adjacency,
            &x0,
            eps / k as f64,
            &mut rng,
        )?;
        picks[i] += 1;
    }
    println!("true active piece at the center: {true_active}");
    println!("private picks over 1000 draws at eps/k = {}: {picks:?}", eps / k as f64);
    println!("(a budget this small keeps every piece in play - that is the privacy cost)\n");

    // The full method releases the last iterate; the trace shows the
    // noisy, non-monotone descent.
    let mut cfg = DpSubgradConfig::for_instance(&instance, k)?;
    cfg.record_trace = true;
    let out = dp_subgradient_method(&instance, eps, &cfg, &mut rng)?;
    let trace = out.aux.iterate_values.as_ref().unwrap();
    print!("gap trace (every 10th iterate):");
    for v in trace.iter().step_by(10) {
        print!(" {:.3}", v - f_opt);
    }
    println!();
    println!(
        "released f = {:.4} (gap {:.4}), best visited gap {:.4}",
        out.value,
        out.value - f_opt,
        out.aux.best_value.unwrap() - f_opt
    );

    // Non-private subgradient with the same budget of iterations.
    let schedule = dp_pwa::solver::StepSchedule::default_for(
        instance.domain.diameter(),
        instance.objective.lipschitz_bound(),
        k,
    )?;
    let clean = projected_subgradient(&instance.objective, &instance.domain, k, &schedule)?;
    println!("non-private best over {k} iterations: gap {:.6}", clean.best_value - f_opt);
    Ok(())
}
