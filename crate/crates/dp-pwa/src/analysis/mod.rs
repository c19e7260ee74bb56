//! Utility guarantees and empirical privacy checks.
//!
//! [`bounds`] turns problem parameters into closed-form expected-error
//! certificates for each private mechanism. [`c_estimate`] estimates the
//! density-concentration constant those certificates depend on.
//! [`audit`] attacks a mechanism from the outside: threshold detectors on
//! adjacent inputs, and a brute-force check of the certified sensitivity.

pub mod audit;
pub mod bounds;
pub mod c_estimate;

pub use audit::{
    audit_detection, audit_sensitivity_bruteforce, detection_lower_bound, detection_margin,
    DetectionPoint,
};
pub use bounds::{
    bound_dp_subgradient, bound_exponential_mean, bound_solution_perturbation,
    exp_mech_discrete_bounds, gamma_bar, BoundReport, DiscreteExpBounds,
};
pub use c_estimate::{estimate_c, estimate_c_with_fopt, CEstimate};
