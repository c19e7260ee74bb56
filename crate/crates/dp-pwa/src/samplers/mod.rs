//! Randomness plumbing and the noise/selection samplers shared by every
//! private mechanism.

pub mod discrete;
pub mod laplace;
pub mod mcmc;
pub mod source;
pub mod uniform;

pub use discrete::{discrete_exponential_probabilities, sample_discrete_exponential};
pub use laplace::{sample_gamma_magnitude, sample_unit_vector, sample_vector_laplace};
pub use mcmc::{
    metropolis_run, metropolis_sample, McmcConfig, McmcStats, DEFAULT_MCMC_STEPS,
    DEFAULT_PROPOSAL_ETA,
};
pub use source::{stable_mix, RandomSource};
pub use uniform::sample_box_uniform;
