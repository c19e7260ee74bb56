//! Non-private optimization: projected subgradient descent and a grid-search
//! oracle for reference optima.

use crate::error::{Error, Result};
use crate::problem::domain::BoxDomain;
use crate::problem::objective::PwaObjective;

/// Step-size rule for subgradient iterations, indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSchedule {
    /// `alpha_i = alpha0`.
    Constant { alpha0: f64 },
    /// `alpha_i = alpha0 / sqrt(i)`.
    ScaledInvSqrt { alpha0: f64 },
}

impl StepSchedule {
    pub fn constant(alpha0: f64) -> Result<Self> {
        Self::check(alpha0)?;
        Ok(StepSchedule::Constant { alpha0 })
    }

    pub fn scaled_inv_sqrt(alpha0: f64) -> Result<Self> {
        Self::check(alpha0)?;
        Ok(StepSchedule::ScaledInvSqrt { alpha0 })
    }

    fn check(alpha0: f64) -> Result<()> {
        if !(alpha0.is_finite() && alpha0 > 0.0) {
            return Err(Error::invalid(format!(
                "step size must be positive and finite, got {alpha0}"
            )));
        }
        Ok(())
    }

    /// The classical fixed-budget choice `alpha = R / (G sqrt(k))` for k
    /// iterations over a domain of diameter R with Lipschitz constant G.
    pub fn default_for(diameter: f64, lipschitz: f64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("iteration budget must be at least 1"));
        }
        if !(diameter.is_finite() && diameter > 0.0) {
            return Err(Error::invalid(format!("diameter must be positive, got {diameter}")));
        }
        if !(lipschitz.is_finite() && lipschitz > 0.0) {
            return Err(Error::invalid(format!(
                "Lipschitz constant must be positive, got {lipschitz}"
            )));
        }
        StepSchedule::constant(diameter / (lipschitz * (k as f64).sqrt()))
    }

    /// Step size for 1-indexed iteration `i`.
    pub fn step(&self, i: usize) -> f64 {
        debug_assert!(i >= 1);
        match self {
            StepSchedule::Constant { alpha0 } => *alpha0,
            StepSchedule::ScaledInvSqrt { alpha0 } => alpha0 / (i as f64).sqrt(),
        }
    }

    /// The first k step sizes.
    pub fn steps(&self, k: usize) -> Vec<f64> {
        (1..=k).map(|i| self.step(i)).collect()
    }
}

/// Outcome of a subgradient run over iterates `x_1 .. x_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    /// Objective value at each iterate, in order (length k).
    pub iterate_values: Vec<f64>,
}

/// Projected subgradient descent: `x_{i+1} = clamp(x_i - alpha_i g_i)` with
/// `x_1` at the box center and `g_i` the active piece's coefficient row.
/// Performs k updates and reports the best of the k visited iterates (the
/// method is not a descent method, so the last iterate may be worse).
pub fn projected_subgradient(
    objective: &PwaObjective,
    domain: &BoxDomain,
    k: usize,
    schedule: &StepSchedule,
) -> Result<SolveReport> {
    if k == 0 {
        return Err(Error::invalid("iteration budget must be at least 1"));
    }
    if objective.dimension() != domain.dimension() {
        return Err(Error::DimensionMismatch {
            expected: objective.dimension(),
            actual: domain.dimension(),
        });
    }
    let mut x = domain.center();
    let mut iterate_values = Vec::with_capacity(k);
    let mut best_value = f64::INFINITY;
    let mut best_point = x.clone();
    for i in 1..=k {
        let (value, active) = objective.evaluate(&x)?;
        iterate_values.push(value);
        if value < best_value {
            best_value = value;
            best_point.copy_from_slice(&x);
        }
        let alpha = schedule.step(i);
        let g = &objective.piece(active).a;
        for (xj, gj) in x.iter_mut().zip(g) {
            *xj -= alpha * gj;
        }
        domain.clamp_in_place(&mut x);
    }
    Ok(SolveReport { best_point, best_value, iterate_values })
}

/// Hard dimension cap for grid search (cost grows as resolution^d).
pub const MAX_GRID_DIMENSION: usize = 4;
const MAX_GRID_POINTS: u64 = 200_000_000;
const GRID_LEVELS: usize = 3;

/// Reference optimum by multilevel grid search.
///
/// The requested resolution is rounded up to the dyadic ladder `2^j + 1`,
/// and every ladder rung from 3 points per axis up to the rounded
/// resolution is scanned: a uniform grid over the box, then two successive
/// refinements of the same resolution around the rung's incumbent (each
/// refinement spans one coarse cell in every direction, clipped to the
/// box). One incumbent is carried across rungs and levels with the
/// (value, lexicographic point) order, so the result is the minimum over a
/// point set that only grows with resolution — the reported value is
/// monotone nonincreasing in `resolution` by construction, and ties are
/// independent of evaluation order. The ladder costs less than 2x the
/// finest rung alone.
///
/// When the minimizer's basin is resolved at a rung's coarse level the
/// result is within `lipschitz * cell_diagonal(finest level)` of the true
/// minimum.
pub fn brute_force_optimum(
    objective: &PwaObjective,
    domain: &BoxDomain,
    resolution: usize,
) -> Result<(f64, Vec<f64>)> {
    let d = objective.dimension();
    if d != domain.dimension() {
        return Err(Error::DimensionMismatch { expected: d, actual: domain.dimension() });
    }
    if d > MAX_GRID_DIMENSION {
        return Err(Error::SizeLimit(format!(
            "grid search supports at most {MAX_GRID_DIMENSION} dimensions, got {d}"
        )));
    }
    if resolution < 2 {
        return Err(Error::invalid(format!("resolution must be at least 2, got {resolution}")));
    }
    let ladder_top = ladder_resolution(resolution);
    let total = (ladder_top as u64).checked_pow(d as u32);
    match total {
        Some(t) if t <= MAX_GRID_POINTS => {}
        _ => {
            return Err(Error::SizeLimit(format!(
                "grid of {ladder_top}^{d} points exceeds the {MAX_GRID_POINTS} cap"
            )));
        }
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut rung = 3usize;
    loop {
        refined_scan(objective, domain, rung, &mut best)?;
        if rung == ladder_top {
            break;
        }
        rung = 2 * rung - 1;
    }
    Ok(best.expect("grid scan always visits a point"))
}

/// Default grid resolution per dimension for reference solves: roughly a
/// million evaluations at the finest rung regardless of `d`.
pub fn oracle_resolution(d: usize) -> usize {
    match d {
        0 | 1 => 1025,
        2 => 257,
        3 => 65,
        _ => 33,
    }
}

/// Smallest `2^j + 1 >= max(resolution, 3)`.
fn ladder_resolution(resolution: usize) -> usize {
    let mut r = 3usize;
    while r < resolution {
        r = 2 * r - 1;
    }
    r
}

/// One multigrid pass: full-box grid scan at `resolution`, then
/// `GRID_LEVELS - 1` refinements around the incumbent.
fn refined_scan(
    objective: &PwaObjective,
    domain: &BoxDomain,
    resolution: usize,
    best: &mut Option<(f64, Vec<f64>)>,
) -> Result<()> {
    let d = domain.dimension();
    let mut lo = domain.lower().to_vec();
    let mut hi = domain.upper().to_vec();
    for _level in 0..GRID_LEVELS {
        scan_grid(objective, &lo, &hi, resolution, best)?;
        let (_, ref point) = *best.as_ref().expect("grid scan always visits a point");
        // Shrink to one coarse cell around the incumbent, clipped to the box.
        for j in 0..d {
            let cell = (hi[j] - lo[j]) / (resolution - 1) as f64;
            lo[j] = (point[j] - cell).max(domain.lower()[j]);
            hi[j] = (point[j] + cell).min(domain.upper()[j]);
        }
    }
    Ok(())
}

/// Evaluates every grid point of `resolution^d` over `[lo, hi]` and folds it
/// into the incumbent with the (value, lexicographic point) order.
fn scan_grid(
    objective: &PwaObjective,
    lo: &[f64],
    hi: &[f64],
    resolution: usize,
    best: &mut Option<(f64, Vec<f64>)>,
) -> Result<()> {
    let d = lo.len();
    let axes: Vec<Vec<f64>> = (0..d)
        .map(|j| {
            (0..resolution)
                .map(|i| {
                    let t = i as f64 / (resolution - 1) as f64;
                    lo[j] + t * (hi[j] - lo[j])
                })
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; d];
    let mut point = vec![0.0f64; d];
    loop {
        for j in 0..d {
            point[j] = axes[j][idx[j]];
        }
        let (value, _) = objective.evaluate(&point)?;
        if improves(best.as_ref(), value, &point) {
            *best = Some((value, point.clone()));
        }
        // Odometer increment, last axis fastest: scan order is
        // lexicographic in the point, matching the tie rule.
        let mut j = d;
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < resolution {
                break;
            }
            idx[j] = 0;
        }
    }
}

fn improves(best: Option<&(f64, Vec<f64>)>, value: f64, point: &[f64]) -> bool {
    match best {
        None => true,
        // Lexicographic tie rule; slices are NaN-free by construction.
        Some((bv, bp)) => value < *bv || (value == *bv && point.iter().lt(bp.iter())),
    }
}
