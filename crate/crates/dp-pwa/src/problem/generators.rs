//! Instance generators: norm objectives, random Gaussian instances, and
//! resource-allocation reductions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::objective::{AffinePiece, PwaObjective};
use crate::samplers::source::RandomSource;

/// Hard cap on generated piece counts (`gen_l1` grows as 2^d).
pub const MAX_GENERATED_PIECES: usize = 1 << 16;

/// `f(x) = ||x||_inf` as 2d pieces `(+-e_i, 0)`.
pub fn gen_linf(d: usize) -> Result<PwaObjective> {
    if d == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let mut pieces = Vec::with_capacity(2 * d);
    for i in 0..d {
        for sign in [1.0, -1.0] {
            let mut a = vec![0.0; d];
            a[i] = sign;
            pieces.push(AffinePiece::new(a, 0.0));
        }
    }
    PwaObjective::new(pieces)
}

/// `f(x) = ||x||_1` as 2^d sign-pattern pieces. Errors when 2^d would
/// exceed [`MAX_GENERATED_PIECES`].
pub fn gen_l1(d: usize) -> Result<PwaObjective> {
    if d == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if d > MAX_GENERATED_PIECES.trailing_zeros() as usize {
        return Err(Error::SizeLimit(format!(
            "l1 objective in dimension {d} needs 2^{d} pieces; cap is {MAX_GENERATED_PIECES}"
        )));
    }
    let m = 1usize << d;
    let mut pieces = Vec::with_capacity(m);
    for idx in 0..m {
        let a: Vec<f64> = (0..d)
            .map(|j| if idx >> j & 1 == 0 { 1.0 } else { -1.0 })
            .collect();
        pieces.push(AffinePiece::new(a, 0.0));
    }
    PwaObjective::new(pieces)
}

/// Random instance with iid standard normal coefficients and offsets.
///
/// Entries are drawn piece by piece (row, then offset) from a stream seeded
/// only by `seed`, so for fixed `(d, seed)` the instance with m1 < m2 pieces
/// is exactly the m1-prefix of the larger one. Nested piece-count sweeps
/// depend on this.
pub fn gen_gaussian(d: usize, m: usize, seed: u64) -> Result<PwaObjective> {
    if d == 0 || m == 0 {
        return Err(Error::invalid("dimension and piece count must be at least 1"));
    }
    if m > MAX_GENERATED_PIECES {
        return Err(Error::SizeLimit(format!(
            "requested {m} pieces; cap is {MAX_GENERATED_PIECES}"
        )));
    }
    let mut rng = RandomSource::new(seed);
    let mut pieces = Vec::with_capacity(m);
    for _ in 0..m {
        let a: Vec<f64> = (0..d).map(|_| rng.next_gaussian()).collect();
        let b = rng.next_gaussian();
        pieces.push(AffinePiece::new(a, b));
    }
    PwaObjective::new(pieces)
}

/// One-resource allocation problem: `n` agents with utility gains `c_i >= 0`
/// capped at `z_bar_i >= 0`, and a unit price `mu` on the purchased resource
/// amount x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RaParams")]
pub struct ResourceAllocationInstance {
    gains: Vec<f64>,
    caps: Vec<f64>,
    price: f64,
}

#[derive(Deserialize)]
struct RaParams {
    gains: Vec<f64>,
    caps: Vec<f64>,
    price: f64,
}

impl TryFrom<RaParams> for ResourceAllocationInstance {
    type Error = Error;

    fn try_from(p: RaParams) -> Result<Self> {
        ResourceAllocationInstance::new(p.gains, p.caps, p.price)
    }
}

impl ResourceAllocationInstance {
    pub fn new(gains: Vec<f64>, caps: Vec<f64>, price: f64) -> Result<Self> {
        if gains.is_empty() {
            return Err(Error::invalid("need at least one agent"));
        }
        if gains.len() != caps.len() {
            return Err(Error::DimensionMismatch { expected: gains.len(), actual: caps.len() });
        }
        if gains.iter().any(|g| !g.is_finite() || *g < 0.0) {
            return Err(Error::invalid("gains must be finite and nonnegative"));
        }
        if caps.iter().any(|z| !z.is_finite() || *z < 0.0) {
            return Err(Error::invalid("caps must be finite and nonnegative"));
        }
        if !price.is_finite() {
            return Err(Error::invalid("price must be finite"));
        }
        Ok(ResourceAllocationInstance { gains, caps, price })
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn caps(&self) -> &[f64] {
        &self.caps
    }

    pub fn price(&self) -> f64 {
        self.price
    }

    /// Best utility attainable with `x` units of resource: fill agents in
    /// descending gain order until caps or the budget run out. This is the
    /// exact optimum of the underlying allocation LP (exchange argument).
    pub fn best_utility(&self, x: f64) -> f64 {
        let mut order: Vec<usize> = (0..self.gains.len()).collect();
        order.sort_by(|&i, &j| self.gains[j].partial_cmp(&self.gains[i]).unwrap());
        let mut remaining = x.max(0.0);
        let mut util = 0.0;
        for i in order {
            if remaining <= 0.0 {
                break;
            }
            let take = remaining.min(self.caps[i]);
            util += self.gains[i] * take;
            remaining -= take;
        }
        util
    }
}

/// Reduces resource allocation to a 1-D piecewise-affine minimization:
/// `f(x) = price * x - U(x)` where `U(x)` is the best utility for budget x.
///
/// U is concave piecewise-linear; its segments (descending-gain greedy fill
/// breakpoints at cumulative caps) each contribute one affine piece, plus a
/// flat piece once every cap is saturated. Piece slopes are strictly
/// increasing. Agents with zero gain or zero cap never affect U and are
/// dropped; equal gains merge into one segment.
pub fn gen_resource_allocation(inst: &ResourceAllocationInstance) -> Result<PwaObjective> {
    let mut pairs: Vec<(f64, f64)> = inst
        .gains
        .iter()
        .zip(&inst.caps)
        .filter(|(g, z)| **g > 0.0 && **z > 0.0)
        .map(|(g, z)| (*g, *z))
        .collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());

    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
    for (g, z) in pairs {
        match merged.last_mut() {
            Some((last_g, last_z)) if *last_g == g => *last_z += z,
            _ => merged.push((g, z)),
        }
    }

    let mu = inst.price;
    let mut pieces = Vec::with_capacity(merged.len() + 1);
    let mut cum_util = 0.0; // U at the current breakpoint
    let mut cum_cap = 0.0; // current breakpoint
    for (g, z) in merged {
        pieces.push(AffinePiece::new(vec![mu - g], g * cum_cap - cum_util));
        cum_util += g * z;
        cum_cap += z;
    }
    pieces.push(AffinePiece::new(vec![mu], -cum_util));
    PwaObjective::new(pieces)
}
