//! The two noise primitives: vector Laplace (continuous) and discrete
//! exponential selection. Empirical behavior vs the closed forms.

use dp_pwa::problem::PrivacyBudget;
use dp_pwa::samplers::{
    discrete_exponential_probabilities, sample_discrete_exponential, sample_vector_laplace,
    RandomSource,
};

fn main() -> dp_pwa::Result<()> {
    let mut rng = RandomSource::new(1);

    // Vector Laplace with density ~ exp(-eps ||w|| / delta): the norm is
    // Gamma(d, delta/eps), so E||w|| = d * delta / eps.
    let (d, delta, eps) = (3usize, 1.0, 0.5);
    let budget = PrivacyBudget::new(eps)?;
    let n = 200_000;
    let mean_norm: f64 = (0..n)
        .map(|_| {
            let w = sample_vector_laplace(d, delta, &budget, &mut rng).unwrap();
            w.iter().map(|v| v * v).sum::<f64>().sqrt()
        })
        .sum::<f64>()
        / n as f64;
    println!(
        "vector laplace d={d} delta={delta} eps={eps}: E||w|| = {mean_norm:.4} (theory {})",
        d as f64 * delta / eps
    );

    // Discrete exponential selection: P(i) ~ exp(eps * score_i / (2 sens)).
    let scores = [0.0, 1.0, 2.0, 4.0];
    let budget = PrivacyBudget::new(1.0)?;
    let probs = discrete_exponential_probabilities(&scores, 1.0, &budget)?;
    let mut counts = [0usize; 4];
    let draws = 100_000;
    for _ in 0..draws {
        counts[sample_discrete_exponential(&scores, 1.0, &budget, &mut rng)?] += 1;
    }
    println!("scores {scores:?} at eps=1:");
    for (i, (p, c)) in probs.iter().zip(&counts).enumerate() {
        println!("  piece {i}: theory {p:.4}, observed {:.4}", *c as f64 / draws as f64);
    }

    // Cranking eps up collapses the distribution onto the argmax.
    for eps in [0.1, 1.0, 10.0, 1000.0] {
        let budget = PrivacyBudget::new(eps)?;
        let p = discrete_exponential_probabilities(&scores, 1.0, &budget)?;
        println!("eps={eps:>6}: P(argmax) = {:.4}", p[3]);
    }
    Ok(())
}
