//! The resource-allocation family: n agents with private gains and caps
//! buy capacity at a common price; the planner's value function reduces to
//! a 1-D piecewise-affine objective.

use dp_pwa::mechanisms::mech_exponential;
use dp_pwa::problem::{
    gen_resource_allocation, AdjacencySpec, BoxDomain, ProblemInstance,
    ResourceAllocationInstance,
};
use dp_pwa::samplers::RandomSource;
use dp_pwa::solver::{brute_force_optimum, oracle_resolution};

fn main() -> dp_pwa::Result<()> {
    // Three agents: gains per unit, capacity each can absorb, unit price.
    let alloc = ResourceAllocationInstance::new(
        vec![3.0, 2.0, 0.5],
        vec![1.0, 2.0, 4.0],
        1.0,
    )?;

    // Greedy: fill the highest-gain agents first. Concave piecewise-affine
    // utility of the total supply x, so -utility + price*x is our convex
    // max-of-affines objective.
    for x in [0.0, 1.0, 2.5, 7.0, 10.0] {
        println!("best utility at supply {x:>4}: {}", alloc.best_utility(x));
    }

    let objective = gen_resource_allocation(&alloc)?;
    println!("\nreduced objective: {} pieces over 1 variable", objective.num_pieces());

    let instance = ProblemInstance::new(
        objective,
        BoxDomain::new(vec![0.0], vec![10.0])?,
        AdjacencySpec::new(0.1)?,
    )?;
    let (opt, arg) = brute_force_optimum(&instance.objective, &instance.domain, oracle_resolution(1))?;
    println!("optimal supply {:.4} with planner cost {:.4}", arg[0], opt);

    // The gains are the sensitive data; release a supply level privately.
    let mut rng = RandomSource::new(21);
    for eps in [0.1, 1.0, 10.0] {
        let out = mech_exponential(&instance, eps, None, &mut rng)?;
        println!("eps={eps:>4}: private supply {:.3} (cost gap {:.4})", out.point[0], out.value - opt);
    }
    Ok(())
}
