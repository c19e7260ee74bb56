//! Differentially private minimization of piecewise-affine convex functions
//! over box domains.
//!
//! The library privatizes `min_x max_i (a_i' x + b_i)` subject to box
//! constraints, where the offset vector `b` is the sensitive data (adjacent
//! datasets differ by at most `b_max` per coordinate). It provides:
//!
//! * [`problem`] — objectives, box domains, adjacency, instance generators;
//! * [`samplers`] — seeded randomness, vector-Laplace and discrete
//!   exponential sampling, Metropolis chains;
//! * [`solver`] — the non-private projected subgradient method and a
//!   grid-search reference oracle;
//! * [`mechanisms`] — the four private mechanisms (data perturbation,
//!   solution perturbation, exponential sampling, private subgradient
//!   descent);
//! * [`analysis`] — suboptimality bounds and empirical privacy audits;
//! * [`experiment`] — the Monte Carlo sweep harness behind the `dp-pwa`
//!   binary.
//!
//! Start with the runnable examples (`cargo run --example <name>`):
//!
//! | example | shows |
//! |---|---|
//! | `objective_basics` | building and evaluating piecewise-affine objectives |
//! | `noise_sampling` | vector-Laplace and discrete exponential samplers |
//! | `private_mechanisms` | one run of each mechanism on one instance |
//! | `exponential_chain` | MCMC sampling behind the exponential mechanism |
//! | `private_descent` | the DP subgradient method step by step |
//! | `utility_bounds` | theoretical bound calculators vs simulation |
//! | `privacy_audit` | empirical detection-based privacy check |
//! | `resource_allocation` | the resource-allocation instance family |
//! | `sweep_experiment` | full privacy-utility sweep, CSV/JSON outputs |

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod mechanisms;
pub mod problem;
pub mod samplers;
pub mod solver;

pub use error::{Error, Result};
