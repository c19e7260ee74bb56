//! Adjacency and privacy-budget types.
//!
//! Two objectives are adjacent when they share every coefficient row and
//! their offset vectors differ by at most `b_max` in each coordinate
//! (componentwise l-infinity bound). All privacy statements in this crate
//! are with respect to that relation.

use crate::error::{Error, Result};
use crate::problem::objective::PwaObjective;

/// Componentwise bound on how much the offset vector may change between
/// adjacent databases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjacencySpec {
    b_max: f64,
}

impl AdjacencySpec {
    pub fn new(b_max: f64) -> Result<Self> {
        if !(b_max.is_finite() && b_max > 0.0) {
            return Err(Error::invalid(format!(
                "adjacency bound must be positive and finite, got {b_max}"
            )));
        }
        Ok(AdjacencySpec { b_max })
    }

    pub fn b_max(&self) -> f64 {
        self.b_max
    }

    /// Whether two objectives are adjacent: identical coefficient rows,
    /// offsets within `b_max` componentwise.
    pub fn are_adjacent(&self, f: &PwaObjective, g: &PwaObjective) -> bool {
        if f.dimension() != g.dimension() || f.num_pieces() != g.num_pieces() {
            return false;
        }
        f.pieces().iter().zip(g.pieces()).all(|(p, q)| {
            p.a == q.a && (p.b - q.b).abs() <= self.b_max
        })
    }
}

/// Privacy parameter epsilon > 0 (pure differential privacy).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrivacyBudget {
    epsilon: f64,
}

impl PrivacyBudget {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::invalid(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        Ok(PrivacyBudget { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Evenly split budget for a k-fold sequential composition.
    pub fn split(&self, k: usize) -> Result<PrivacyBudget> {
        if k == 0 {
            return Err(Error::invalid("cannot split a budget over zero steps"));
        }
        PrivacyBudget::new(self.epsilon / k as f64)
    }
}

/// l2 sensitivity of the offset vector under the adjacency relation:
/// the offset vector lives in m dimensions and each coordinate moves at most
/// `b_max`, so `|| b - b' ||_2 <= sqrt(m) * b_max`.
pub fn data_sensitivity(m: usize, adj: &AdjacencySpec) -> f64 {
    (m as f64).sqrt() * adj.b_max()
}
