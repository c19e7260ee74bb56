//! Problem domain: piecewise-affine objectives, box domains, adjacency, and
//! instance generators.

pub mod domain;
pub mod generators;
pub mod instance;
pub mod objective;
pub mod privacy;

pub use domain::BoxDomain;
pub use generators::{
    gen_gaussian, gen_l1, gen_linf, gen_resource_allocation, ResourceAllocationInstance,
    MAX_GENERATED_PIECES,
};
pub use instance::ProblemInstance;
pub use objective::{AffinePiece, PwaObjective};
pub use privacy::{data_sensitivity, AdjacencySpec, PrivacyBudget};
