//! Build piecewise-affine objectives three ways and poke at them.

use dp_pwa::problem::{
    gen_linf, AdjacencySpec, BoxDomain, ProblemInstance, PwaObjective,
};
use dp_pwa::solver::{brute_force_optimum, oracle_resolution};

fn main() -> dp_pwa::Result<()> {
    // By hand: f(x, y) = max(x + y, -x + 1, -y).
    let f = PwaObjective::from_rows(
        vec![vec![1.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]],
        vec![0.0, 1.0, 0.0],
    )?;
    let x = [0.25, -0.5];
    let (value, active) = f.evaluate(&x)?;
    println!("f({x:?}) = {value}, active piece {active}");
    println!("piece values {:?}", f.piece_values(&x)?);
    println!("subgradient   {:?}", f.subgradient(&x)?);

    // Ties go to the smallest index: both +-x are active at the origin.
    let g = PwaObjective::from_rows(vec![vec![1.0], vec![-1.0]], vec![0.0, 0.0])?;
    let (_, tie) = g.evaluate(&[0.0])?;
    println!("|x| at 0 reports piece {tie}");

    // From a generator: the l-inf norm in 3 dimensions (6 pieces).
    let linf = gen_linf(3)?;
    println!(
        "linf(3): {} pieces in dimension {}, Lipschitz bound {}",
        linf.num_pieces(),
        linf.dimension(),
        linf.lipschitz_bound()
    );

    // Instances bundle objective + box + adjacency and round-trip as JSON.
    let instance = ProblemInstance::new(
        linf,
        BoxDomain::symmetric(3, 2.0)?,
        AdjacencySpec::new(0.1)?,
    )?;
    let json = instance.to_json_string()?;
    let back = ProblemInstance::from_json_str(&json)?;
    println!("serialized to {} bytes, round-trips: {}", json.len(), back == instance);

    // Reference optimum by grid refinement (exact for this objective: 0).
    let (opt, arg) = brute_force_optimum(
        &instance.objective,
        &instance.domain,
        oracle_resolution(instance.objective.dimension()),
    )?;
    println!("grid optimum {opt} at {arg:?}");
    Ok(())
}
