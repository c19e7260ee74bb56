//! Random-walk Metropolis sampling restricted to a box domain.

use crate::error::{Error, Result};
use crate::problem::domain::BoxDomain;
use crate::samplers::source::RandomSource;

/// Chain parameters. `proposal_scale` is the per-coordinate standard
/// deviation of the isotropic Gaussian proposal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McmcConfig {
    pub steps: usize,
    pub proposal_scale: f64,
}

pub const DEFAULT_MCMC_STEPS: usize = 5000;
pub const DEFAULT_PROPOSAL_ETA: f64 = 0.1;

impl McmcConfig {
    pub fn new(steps: usize, proposal_scale: f64) -> Result<Self> {
        if steps == 0 {
            return Err(Error::invalid("chain needs at least one step"));
        }
        if !(proposal_scale.is_finite() && proposal_scale > 0.0) {
            return Err(Error::invalid(format!(
                "proposal scale must be positive, got {proposal_scale}"
            )));
        }
        Ok(McmcConfig { steps, proposal_scale })
    }

    /// Proposal scale `eta * half_width` where half_width is the widest
    /// coordinate extent of the box, divided by two.
    pub fn for_domain(domain: &BoxDomain, eta: f64, steps: usize) -> Result<Self> {
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Error::invalid(format!("eta must be positive, got {eta}")));
        }
        let half_width = domain
            .lower()
            .iter()
            .zip(domain.upper())
            .map(|(lo, hi)| 0.5 * (hi - lo))
            .fold(0.0f64, f64::max);
        if half_width == 0.0 {
            return Err(Error::invalid("box has zero width in every coordinate"));
        }
        McmcConfig::new(steps, eta * half_width)
    }

    pub fn default_for(domain: &BoxDomain) -> Result<Self> {
        McmcConfig::for_domain(domain, DEFAULT_PROPOSAL_ETA, DEFAULT_MCMC_STEPS)
    }
}

/// Acceptance accounting for one chain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct McmcStats {
    pub proposals: usize,
    pub accepted: usize,
    pub rejected_out_of_box: usize,
    pub rejected_by_ratio: usize,
}

impl McmcStats {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposals == 0 {
            return 0.0;
        }
        self.accepted as f64 / self.proposals as f64
    }

    /// Acceptance rate among proposals that landed inside the box.
    pub fn in_box_acceptance_rate(&self) -> f64 {
        let in_box = self.proposals - self.rejected_out_of_box;
        if in_box == 0 {
            return 0.0;
        }
        self.accepted as f64 / in_box as f64
    }
}

/// Runs one Metropolis chain and returns its final state plus acceptance
/// stats. The chain starts at the box center; proposals falling outside the
/// box are rejected outright (the target is supported on the box), otherwise
/// the usual log-ratio acceptance applies. The stationary law has density
/// proportional to `exp(log_density)` restricted to the box.
pub fn metropolis_run<F>(
    log_density: F,
    domain: &BoxDomain,
    cfg: &McmcConfig,
    rng: &mut RandomSource,
) -> Result<(Vec<f64>, McmcStats)>
where
    F: Fn(&[f64]) -> f64,
{
    let d = domain.dimension();
    let mut x = domain.center();
    let mut log_px = log_density(&x);
    if !log_px.is_finite() {
        return Err(Error::invalid("log density is non-finite at the box center"));
    }
    let mut stats = McmcStats::default();
    let mut proposal = vec![0.0; d];
    for _ in 0..cfg.steps {
        stats.proposals += 1;
        for (p, xi) in proposal.iter_mut().zip(&x) {
            *p = xi + cfg.proposal_scale * rng.next_gaussian();
        }
        if !domain.contains(&proposal) {
            stats.rejected_out_of_box += 1;
            continue;
        }
        let log_pnew = log_density(&proposal);
        if !log_pnew.is_finite() {
            return Err(Error::invalid("log density is non-finite inside the box"));
        }
        // accept with prob min(1, exp(log_pnew - log_px))
        if log_pnew >= log_px || rng.next_f64().ln() < log_pnew - log_px {
            std::mem::swap(&mut x, &mut proposal);
            log_px = log_pnew;
            stats.accepted += 1;
        } else {
            stats.rejected_by_ratio += 1;
        }
    }
    Ok((x, stats))
}

/// Final state of one Metropolis chain (see [`metropolis_run`]).
pub fn metropolis_sample<F>(
    log_density: F,
    domain: &BoxDomain,
    cfg: &McmcConfig,
    rng: &mut RandomSource,
) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> f64,
{
    metropolis_run(log_density, domain, cfg, rng).map(|(x, _)| x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_target_accepts_every_in_box_proposal() {
        let domain = BoxDomain::symmetric(2, 1.0).unwrap();
        let cfg = McmcConfig::new(2000, 0.3).unwrap();
        let mut rng = RandomSource::new(31);
        let (_, stats) = metropolis_run(|_| 0.0, &domain, &cfg, &mut rng).unwrap();
        assert_eq!(stats.rejected_by_ratio, 0);
        assert_eq!(stats.accepted + stats.rejected_out_of_box, stats.proposals);
        assert!((stats.in_box_acceptance_rate() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constant_target_mean_is_box_center() {
        let domain = BoxDomain::symmetric(2, 1.0).unwrap();
        let cfg = McmcConfig::new(500, 0.3).unwrap();
        let root = RandomSource::new(32);
        let chains = 10_000;
        let mut sum = [0.0f64; 2];
        for i in 0..chains {
            let mut rng = root.derive_child(i);
            let x = metropolis_sample(|_| 0.0, &domain, &cfg, &mut rng).unwrap();
            sum[0] += x[0];
            sum[1] += x[1];
        }
        let mean = [sum[0] / chains as f64, sum[1] / chains as f64];
        assert!(mean[0].abs() < 0.05 && mean[1].abs() < 0.05, "mean {mean:?}");
    }

    #[test]
    fn linear_target_matches_truncated_exponential_mean() {
        // density ∝ exp(-2x) on [-1, 1]; mean from direct quadrature.
        let expected = -0.5373147207275482;
        let domain = BoxDomain::symmetric(1, 1.0).unwrap();
        let cfg = McmcConfig::new(500, 0.3).unwrap();
        let root = RandomSource::new(33);
        let chains = 4000;
        let mut sum = 0.0;
        for i in 0..chains {
            let mut rng = root.derive_child(i);
            sum += metropolis_sample(|x| -2.0 * x[0], &domain, &cfg, &mut rng).unwrap()[0];
        }
        let mean = sum / chains as f64;
        assert!((mean - expected).abs() < 0.05, "mean {mean} vs {expected}");
    }

    #[test]
    fn chain_never_leaves_box() {
        let domain = BoxDomain::new(vec![0.0, -2.0], vec![0.5, -1.0]).unwrap();
        let cfg = McmcConfig::new(300, 1.0).unwrap(); // large steps, many rejections
        let root = RandomSource::new(34);
        for i in 0..200 {
            let mut rng = root.derive_child(i);
            let x = metropolis_sample(|x| -x[0] - x[1], &domain, &cfg, &mut rng).unwrap();
            assert!(domain.contains(&x), "escaped: {x:?}");
        }
    }

    #[test]
    fn default_config_tracks_widest_coordinate() {
        let domain = BoxDomain::new(vec![0.0, 0.0], vec![4.0, 1.0]).unwrap();
        let cfg = McmcConfig::default_for(&domain).unwrap();
        assert_eq!(cfg.steps, DEFAULT_MCMC_STEPS);
        assert!((cfg.proposal_scale - 0.2).abs() < 1e-15); // 0.1 * (4/2)
    }

    #[test]
    fn rejects_bad_config_and_targets() {
        let domain = BoxDomain::symmetric(1, 1.0).unwrap();
        assert!(McmcConfig::new(0, 0.1).is_err());
        assert!(McmcConfig::new(10, 0.0).is_err());
        assert!(McmcConfig::for_domain(&domain, -0.1, 10).is_err());
        let point = BoxDomain::new(vec![0.0], vec![0.0]).unwrap();
        assert!(McmcConfig::default_for(&point).is_err());
        let cfg = McmcConfig::new(10, 0.1).unwrap();
        let mut rng = RandomSource::new(1);
        assert!(metropolis_sample(|_| f64::NAN, &domain, &cfg, &mut rng).is_err());
    }
}
