use crate::error::{Error, Result};
use crate::mechanisms::{inner_solve, AuxData, MechanismId, MechanismOutput, INNER_SOLVE_ITERS};
use crate::problem::instance::ProblemInstance;
use crate::problem::privacy::{data_sensitivity, PrivacyBudget};
use crate::samplers::laplace::sample_vector_laplace;
use crate::samplers::source::RandomSource;

/// M_P: privatize the offsets, then solve the perturbed problem.
///
/// Adds m-dimensional vector-Laplace noise to the offset vector b at the
/// offsets' l2 sensitivity sqrt(m)*b_max, solves the noisy problem
/// non-privately, and releases the resulting point. Everything after the
/// noise injection is post-processing, so the release is eps-private.
pub fn mech_data_laplace(
    instance: &ProblemInstance,
    eps: f64,
    rng: &mut RandomSource,
) -> Result<MechanismOutput> {
    let budget = PrivacyBudget::new(eps)?;
    let m = instance.objective.num_pieces();
    let sensitivity = data_sensitivity(m, &instance.adjacency);
    let noise = sample_vector_laplace(m, sensitivity, &budget, rng)?;
    let noise_norm = noise.iter().map(|w| w * w).sum::<f64>().sqrt();

    let perturbed = instance.objective.with_offset_noise(&noise)?;
    let point = inner_solve(&perturbed, &instance.domain, INNER_SOLVE_ITERS)?;
    let (value, _) = instance.objective.evaluate(&point)?;

    Ok(MechanismOutput {
        mechanism: MechanismId::DataPerturbation,
        point,
        value,
        epsilon_spent: eps,
        aux: AuxData {
            noise_norm: Some(noise_norm),
            ..AuxData::default()
        },
    })
}

/// M_S: solve the true problem, then privatize the solution.
///
/// Adds d-dimensional vector-Laplace noise to the (non-private) solver
/// output at the caller-certified l2 sensitivity of the solution map;
/// `sensitivity_bound = None` uses the box diameter, which is always a
/// valid (if loose) bound. Both the raw noisy point and its projection
/// onto the box are recorded; the projected point is the release.
pub fn mech_solution_laplace(
    instance: &ProblemInstance,
    eps: f64,
    sensitivity_bound: Option<f64>,
    rng: &mut RandomSource,
) -> Result<MechanismOutput> {
    let budget = PrivacyBudget::new(eps)?;
    let bound = sensitivity_bound.unwrap_or_else(|| instance.domain.diameter());
    if !(bound > 0.0) || !bound.is_finite() {
        return Err(Error::invalid(format!(
            "solution sensitivity bound must be positive and finite, got {bound}"
        )));
    }

    let x_opt = inner_solve(&instance.objective, &instance.domain, INNER_SOLVE_ITERS)?;
    let d = instance.domain.dimension();
    let noise = sample_vector_laplace(d, bound, &budget, rng)?;

    let raw: Vec<f64> = x_opt.iter().zip(&noise).map(|(x, w)| x + w).collect();
    let clamped = instance.domain.clamp(&raw)?;
    let (value, _) = instance.objective.evaluate(&clamped)?;

    Ok(MechanismOutput {
        mechanism: MechanismId::SolutionPerturbation,
        point: clamped.clone(),
        value,
        epsilon_spent: eps,
        aux: AuxData {
            raw_point: Some(raw),
            clamped_point: Some(clamped),
            ..AuxData::default()
        },
    })
}
