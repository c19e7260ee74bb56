//! The differentially private mechanisms.
//!
//! Four private mechanisms share one output contract:
//!
//! * `M_P` — perturb the offset data, then solve the noisy problem
//!   ([`mech_data_laplace`]);
//! * `M_S` — solve, then perturb the solution ([`mech_solution_laplace`]);
//! * `M_E` — sample a solution with density tilted toward low objective
//!   values ([`mech_exponential`]);
//! * `DP_SUBGRAD` — subgradient descent with privately selected pieces
//!   ([`dp_subgradient_method`]).
//!
//! `BASELINE` tags non-private reference solves in experiment records.
//!
//! `MechanismOutput::value` is always the objective on the *true* data at
//! the released point — it is evaluation telemetry, not part of the private
//! release.

mod exponential;
mod laplace_mechs;
mod subgradient;

pub use exponential::mech_exponential;
pub use laplace_mechs::{mech_data_laplace, mech_solution_laplace};
pub use subgradient::{
    dp_subgradient_method, private_subgradient, private_subgradient_index, DpSubgradConfig,
    DEFAULT_DP_SUBGRAD_ITERS,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::domain::BoxDomain;
use crate::problem::objective::PwaObjective;
use crate::solver::{projected_subgradient, StepSchedule};

/// Iteration budget for the non-private solves inside M_P and M_S. Chosen
/// so solver error is far below the privacy noise floor at eps <= 1.
pub const INNER_SOLVE_ITERS: usize = 2000;

/// Identifies which mechanism produced a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MechanismId {
    #[serde(rename = "M_P")]
    DataPerturbation,
    #[serde(rename = "M_S")]
    SolutionPerturbation,
    #[serde(rename = "M_E")]
    ExponentialSampler,
    #[serde(rename = "DP_SUBGRAD")]
    DpSubgradient,
    /// Non-private reference solve (no privacy guarantee).
    #[serde(rename = "BASELINE")]
    Baseline,
}

impl MechanismId {
    pub const ALL_PRIVATE: [MechanismId; 4] = [
        MechanismId::DataPerturbation,
        MechanismId::SolutionPerturbation,
        MechanismId::ExponentialSampler,
        MechanismId::DpSubgradient,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            MechanismId::DataPerturbation => "M_P",
            MechanismId::SolutionPerturbation => "M_S",
            MechanismId::ExponentialSampler => "M_E",
            MechanismId::DpSubgradient => "DP_SUBGRAD",
            MechanismId::Baseline => "BASELINE",
        }
    }

    pub fn from_token(s: &str) -> Result<Self> {
        match s {
            "M_P" => Ok(MechanismId::DataPerturbation),
            "M_S" => Ok(MechanismId::SolutionPerturbation),
            "M_E" => Ok(MechanismId::ExponentialSampler),
            "DP_SUBGRAD" => Ok(MechanismId::DpSubgradient),
            "BASELINE" => Ok(MechanismId::Baseline),
            other => Err(Error::invalid(format!(
                "unknown mechanism `{other}` (expected M_P, M_S, M_E, DP_SUBGRAD, or BASELINE)"
            ))),
        }
    }

    /// Stable code for seed derivation; never renumber.
    pub fn seed_code(&self) -> u64 {
        match self {
            MechanismId::Baseline => 0,
            MechanismId::DataPerturbation => 1,
            MechanismId::SolutionPerturbation => 2,
            MechanismId::ExponentialSampler => 3,
            MechanismId::DpSubgradient => 4,
        }
    }
}

impl std::fmt::Display for MechanismId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

impl std::str::FromStr for MechanismId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MechanismId::from_token(s)
    }
}

/// Mechanism-specific extras attached to an output. Empty fields are
/// omitted from JSON.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AuxData {
    /// M_P: l2 norm of the offset noise that was added.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_norm: Option<f64>,
    /// M_S: pre-projection output (may lie outside the box).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_point: Option<Vec<f64>>,
    /// M_S: projected output (identical to `point`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clamped_point: Option<Vec<f64>>,
    /// M_E: fraction of proposals accepted by the chain.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mcmc_acceptance_rate: Option<f64>,
    /// DP_SUBGRAD: true-objective trace at iterates x_1 .. x_{k+1}
    /// (start, every update, released point).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterate_values: Option<Vec<f64>>,
    /// DP_SUBGRAD: best true-objective value over every visited iterate
    /// (including the returned last iterate).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_value: Option<f64>,
    /// DP_SUBGRAD: the iterate attaining `best_value`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_point: Option<Vec<f64>>,
}

/// Release of one private mechanism run.
///
/// Wire schema: `{"mechanism", "point", "value", "epsilon", "aux"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MechanismOutput {
    pub mechanism: MechanismId,
    pub point: Vec<f64>,
    pub value: f64,
    #[serde(rename = "epsilon")]
    pub epsilon_spent: f64,
    pub aux: AuxData,
}

/// Non-private inner solve shared by M_P and M_S (and by the experiment
/// baseline at a caller-chosen budget). Degenerate problems (constant
/// objective or single-point box) short-circuit to the center.
pub(crate) fn inner_solve(
    objective: &PwaObjective,
    domain: &BoxDomain,
    k: usize,
) -> Result<Vec<f64>> {
    let lipschitz = objective.lipschitz_bound();
    let diameter = domain.diameter();
    if lipschitz == 0.0 || diameter == 0.0 {
        return Ok(domain.center());
    }
    let schedule = StepSchedule::default_for(diameter, lipschitz, k)?;
    Ok(projected_subgradient(objective, domain, k, &schedule)?.best_point)
}
