//! Declarative experiment configuration.
//!
//! The JSON form mirrors the struct field names exactly:
//!
//! ```json
//! {
//!   "d": 2,
//!   "m": [5, 10, 20, 40],
//!   "half_width": 1.0,
//!   "epsilon": 0.1,
//!   "runs": 1000,
//!   "mechanisms": ["M_P", "M_S", "M_E", "DP_SUBGRAD", "BASELINE"],
//!   "k": 100,
//!   "mcmc_steps": 5000,
//!   "eta": 0.1,
//!   "seed": 33,
//!   "instance_kind": "gaussian",
//!   "b_max": 0.2
//! }
//! ```
//!
//! `m` and `half_width` each accept a scalar or a list; at most one may be
//! a list, and that one becomes the sweep axis. Every field has a default,
//! so `{}` is a valid config.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mechanisms::MechanismId;
use crate::problem::domain::BoxDomain;
use crate::problem::generators::{
    gen_gaussian, gen_l1, gen_linf, gen_resource_allocation, ResourceAllocationInstance,
};
use crate::problem::instance::ProblemInstance;
use crate::problem::privacy::AdjacencySpec;

/// Scalar-or-list field. `10` and `[5, 10]` both deserialize.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sweepable<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Copy> Sweepable<T> {
    pub fn is_sweep(&self) -> bool {
        matches!(self, Sweepable::Many(_))
    }

    pub fn values(&self) -> Vec<T> {
        match self {
            Sweepable::One(v) => vec![*v],
            Sweepable::Many(vs) => vs.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Gaussian,
    Linf,
    L1,
    Resource,
    File,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub d: usize,
    pub m: Sweepable<usize>,
    /// Box half-width c; the feasible set is `[-c, c]^d`.
    pub half_width: Sweepable<f64>,
    pub epsilon: f64,
    pub runs: usize,
    pub mechanisms: Vec<MechanismId>,
    /// DP subgradient iteration count (budget splits as epsilon / k).
    pub k: usize,
    pub mcmc_steps: usize,
    /// Chain proposal scale as a fraction of the box half-width.
    pub eta: f64,
    pub seed: u64,
    pub instance_kind: InstanceKind,
    /// Adjacency bound: neighboring datasets move each offset by at most this.
    pub b_max: f64,
    /// Problem JSON path, required when `instance_kind` is `file`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance_file: Option<PathBuf>,
    /// Allocation parameters, required when `instance_kind` is `resource`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resource: Option<ResourceAllocationInstance>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            d: 2,
            m: Sweepable::One(10),
            half_width: Sweepable::One(1.0),
            epsilon: 0.1,
            runs: 1000,
            mechanisms: vec![
                MechanismId::DataPerturbation,
                MechanismId::SolutionPerturbation,
                MechanismId::ExponentialSampler,
                MechanismId::DpSubgradient,
                MechanismId::Baseline,
            ],
            k: 100,
            mcmc_steps: 5000,
            eta: 0.1,
            seed: 33,
            instance_kind: InstanceKind::Gaussian,
            b_max: 0.2,
            instance_file: None,
            resource: None,
        }
    }
}

fn cfg_err(field: &str, message: impl Into<String>) -> Error {
    Error::Config { field: field.into(), message: message.into() }
}

impl ExperimentConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.d > 4 {
            return Err(cfg_err("d", "dimension must be 1..=4 (exact grid oracle limit)"));
        }
        if self.runs == 0 {
            return Err(cfg_err("runs", "need at least one run"));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(cfg_err("epsilon", format!("must be positive, got {}", self.epsilon)));
        }
        if self.mechanisms.is_empty() {
            return Err(cfg_err("mechanisms", "mechanism set is empty"));
        }
        for (i, mech) in self.mechanisms.iter().enumerate() {
            if self.mechanisms[..i].contains(mech) {
                return Err(cfg_err("mechanisms", format!("duplicate entry {mech}")));
            }
        }
        if self.k == 0 {
            return Err(cfg_err("k", "need at least one iteration"));
        }
        if self.mcmc_steps == 0 {
            return Err(cfg_err("mcmc_steps", "need at least one chain step"));
        }
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(cfg_err("eta", format!("must be positive, got {}", self.eta)));
        }
        if !(self.b_max.is_finite() && self.b_max > 0.0) {
            return Err(cfg_err("b_max", format!("must be positive, got {}", self.b_max)));
        }
        if self.m.is_sweep() && self.half_width.is_sweep() {
            return Err(cfg_err("m", "m and half_width cannot both be sweep lists"));
        }
        let m_values = self.m.values();
        if m_values.is_empty() {
            return Err(cfg_err("m", "sweep list is empty"));
        }
        if m_values.iter().any(|&m| m == 0) {
            return Err(cfg_err("m", "piece counts must be at least 1"));
        }
        let c_values = self.half_width.values();
        if c_values.is_empty() {
            return Err(cfg_err("half_width", "sweep list is empty"));
        }
        if c_values.iter().any(|c| !(c.is_finite() && *c > 0.0)) {
            return Err(cfg_err("half_width", "half-widths must be positive and finite"));
        }
        match self.instance_kind {
            InstanceKind::Gaussian => {}
            InstanceKind::Linf | InstanceKind::L1 => {
                if self.m.is_sweep() {
                    return Err(cfg_err(
                        "m",
                        "piece-count sweeps need gaussian instances (nested prefixes)",
                    ));
                }
            }
            InstanceKind::Resource => {
                if self.m.is_sweep() {
                    return Err(cfg_err(
                        "m",
                        "piece-count sweeps need gaussian instances (nested prefixes)",
                    ));
                }
                if self.d != 1 {
                    return Err(cfg_err("d", "resource allocation problems are one-dimensional"));
                }
                if self.resource.is_none() {
                    return Err(cfg_err("resource", "required when instance_kind is resource"));
                }
            }
            InstanceKind::File => {
                if self.m.is_sweep() || self.half_width.is_sweep() {
                    return Err(cfg_err(
                        "instance_kind",
                        "file instances carry their own pieces and box; sweeps do not apply",
                    ));
                }
                if self.instance_file.is_none() {
                    return Err(cfg_err("instance_file", "required when instance_kind is file"));
                }
            }
        }
        Ok(())
    }
}

/// One resolved point on the sweep axis.
pub struct SweepPoint {
    pub index: u64,
    pub value: f64,
    pub instance: ProblemInstance,
}

pub struct ResolvedSweep {
    /// Recorded as the `sweep_name` column: `m` or `half_width`.
    pub name: &'static str,
    pub points: Vec<SweepPoint>,
}

/// Expands a validated config into one concrete instance per sweep point.
///
/// Piece-count sweeps reuse a single master draw, so the instance for a
/// smaller m is exactly a prefix of the instance for a larger one.
pub fn build_sweep(config: &ExperimentConfig) -> Result<ResolvedSweep> {
    config.validate()?;
    let adjacency = AdjacencySpec::new(config.b_max)?;

    if let InstanceKind::File = config.instance_kind {
        let path = config.instance_file.as_ref().expect("validated");
        let instance = ProblemInstance::load(path)?;
        // A loaded problem fixes its own box; record its widest half-side.
        let value = instance
            .domain
            .lower()
            .iter()
            .zip(instance.domain.upper())
            .map(|(lo, hi)| (hi - lo) / 2.0)
            .fold(0.0f64, f64::max);
        return Ok(ResolvedSweep {
            name: "half_width",
            points: vec![SweepPoint { index: 0, value, instance }],
        });
    }

    if config.m.is_sweep() {
        let m_values = config.m.values();
        let c = config.half_width.values()[0];
        let domain = BoxDomain::symmetric(config.d, c)?;
        let master =
            gen_gaussian(config.d, *m_values.iter().max().expect("nonempty"), config.seed)?;
        let points = m_values
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let instance = ProblemInstance::new(
                    master.prefix(m)?,
                    domain.clone(),
                    adjacency.clone(),
                )?;
                Ok(SweepPoint { index: i as u64, value: m as f64, instance })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(ResolvedSweep { name: "m", points });
    }

    let m = config.m.values()[0];
    let objective = match config.instance_kind {
        InstanceKind::Gaussian => gen_gaussian(config.d, m, config.seed)?,
        InstanceKind::Linf => gen_linf(config.d)?,
        InstanceKind::L1 => gen_l1(config.d)?,
        InstanceKind::Resource => {
            gen_resource_allocation(config.resource.as_ref().expect("validated"))?
        }
        InstanceKind::File => unreachable!("handled above"),
    };
    let points = config
        .half_width
        .values()
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let instance = ProblemInstance::new(
                objective.clone(),
                BoxDomain::symmetric(config.d, c)?,
                adjacency.clone(),
            )?;
            Ok(SweepPoint { index: i as u64, value: c, instance })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResolvedSweep { name: "half_width", points })
}
