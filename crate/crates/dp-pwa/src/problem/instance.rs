//! Full problem instances and their on-disk JSON form.
//!
//! Wire schema (field names are a compatibility contract):
//!
//! ```json
//! {
//!   "d": 2,
//!   "m": 3,
//!   "A": [[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]],
//!   "b": [0.0, 0.0, 0.5],
//!   "box": {"lower": [-1.0, -1.0], "upper": [1.0, 1.0]},
//!   "b_max": 0.1
//! }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::domain::BoxDomain;
use crate::problem::objective::PwaObjective;
use crate::problem::privacy::AdjacencySpec;

/// Objective + feasible box + adjacency bound: everything a mechanism needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "InstanceJson", try_from = "InstanceJson")]
pub struct ProblemInstance {
    pub objective: PwaObjective,
    pub domain: BoxDomain,
    pub adjacency: AdjacencySpec,
}

impl ProblemInstance {
    pub fn new(
        objective: PwaObjective,
        domain: BoxDomain,
        adjacency: AdjacencySpec,
    ) -> Result<Self> {
        if objective.dimension() != domain.dimension() {
            return Err(Error::DimensionMismatch {
                expected: objective.dimension(),
                actual: domain.dimension(),
            });
        }
        Ok(ProblemInstance { objective, domain, adjacency })
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string()?).map_err(|e| Error::io(path, e))
    }

    /// Same instance with the offset vector replaced (used by data
    /// perturbation and by adjacency audits).
    pub fn with_offsets(&self, b: Vec<f64>) -> Result<Self> {
        let rows: Vec<Vec<f64>> =
            self.objective.pieces().iter().map(|p| p.a.clone()).collect();
        Ok(ProblemInstance {
            objective: PwaObjective::from_rows(rows, b)?,
            domain: self.domain.clone(),
            adjacency: self.adjacency,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    d: usize,
    m: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    #[serde(rename = "box")]
    domain: DomainJson,
    b_max: f64,
}

#[derive(Serialize, Deserialize)]
struct DomainJson {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl From<ProblemInstance> for InstanceJson {
    fn from(inst: ProblemInstance) -> Self {
        InstanceJson {
            d: inst.objective.dimension(),
            m: inst.objective.num_pieces(),
            a: inst.objective.pieces().iter().map(|p| p.a.clone()).collect(),
            b: inst.objective.pieces().iter().map(|p| p.b).collect(),
            domain: DomainJson {
                lower: inst.domain.lower().to_vec(),
                upper: inst.domain.upper().to_vec(),
            },
            b_max: inst.adjacency.b_max(),
        }
    }
}

impl TryFrom<InstanceJson> for ProblemInstance {
    type Error = Error;

    fn try_from(j: InstanceJson) -> Result<Self> {
        let objective = PwaObjective::from_rows(j.a, j.b)?;
        if objective.dimension() != j.d {
            return Err(Error::invalid(format!(
                "declared d={} but rows have {} columns",
                j.d,
                objective.dimension()
            )));
        }
        if objective.num_pieces() != j.m {
            return Err(Error::invalid(format!(
                "declared m={} but found {} rows",
                j.m,
                objective.num_pieces()
            )));
        }
        let domain = BoxDomain::new(j.domain.lower, j.domain.upper)?;
        let adjacency = AdjacencySpec::new(j.b_max)?;
        ProblemInstance::new(objective, domain, adjacency)
    }
}
