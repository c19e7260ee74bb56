//! Piecewise-affine convex objectives `f(x) = max_i (a_i' x + b_i)`.

use crate::error::{Error, Result};

/// One affine piece `a' x + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinePiece {
    pub a: Vec<f64>,
    pub b: f64,
}

impl AffinePiece {
    pub fn new(a: Vec<f64>, b: f64) -> Self {
        AffinePiece { a, b }
    }

    /// `a' x + b`. Caller guarantees matching dimension.
    pub fn value_at(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(self.a.len(), x.len());
        let mut acc = self.b;
        for (ai, xi) in self.a.iter().zip(x) {
            acc += ai * xi;
        }
        acc
    }

    pub fn norm(&self) -> f64 {
        self.a.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Convex objective `f(x) = max_i (a_i' x + b_i)`, `m >= 1` pieces in
/// dimension `d >= 1`. Piece order is part of the object's identity: the
/// argmax reported by [`PwaObjective::evaluate`] breaks ties toward the
/// smallest index, and nested experiment sweeps rely on piece prefixes.
#[derive(Debug, Clone, PartialEq)]
pub struct PwaObjective {
    pieces: Vec<AffinePiece>,
    d: usize,
}

impl PwaObjective {
    pub fn new(pieces: Vec<AffinePiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::invalid("objective needs at least one piece"));
        }
        let d = pieces[0].a.len();
        if d == 0 {
            return Err(Error::invalid("objective dimension must be at least 1"));
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.a.len() != d {
                return Err(Error::DimensionMismatch { expected: d, actual: p.a.len() });
            }
            if !p.b.is_finite() || p.a.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(format!("piece {i} has a non-finite entry")));
            }
        }
        Ok(PwaObjective { pieces, d })
    }

    /// Builds from a coefficient matrix (row per piece) and offset vector.
    pub fn from_rows(a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), actual: b.len() });
        }
        let pieces = a
            .into_iter()
            .zip(b)
            .map(|(row, off)| AffinePiece::new(row, off))
            .collect();
        PwaObjective::new(pieces)
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces.len()
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn piece(&self, i: usize) -> &AffinePiece {
        &self.pieces[i]
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, actual: x.len() });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("evaluation point has a non-finite entry"));
        }
        Ok(())
    }

    /// Objective value and the index attaining it (smallest index on ties).
    pub fn evaluate(&self, x: &[f64]) -> Result<(f64, usize)> {
        self.check_point(x)?;
        let mut best = self.pieces[0].value_at(x);
        let mut arg = 0usize;
        for (i, p) in self.pieces.iter().enumerate().skip(1) {
            let v = p.value_at(x);
            if v > best {
                best = v;
                arg = i;
            }
        }
        Ok((best, arg))
    }

    /// Objective value only.
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.evaluate(x).map(|(v, _)| v)
    }

    /// A subgradient of `f` at `x`: the coefficient row of the active piece
    /// (smallest-index tie rule). Valid since the max of affines is
    /// subdifferentiated by any active piece's gradient.
    pub fn subgradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let (_, i) = self.evaluate(x)?;
        Ok(self.pieces[i].a.clone())
    }

    /// All piece values `a_i' x + b_i` at `x`, in piece order.
    pub fn piece_values(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        Ok(self.pieces.iter().map(|p| p.value_at(x)).collect())
    }

    /// `max_i ||a_i||_2` — a Lipschitz constant of `f` in the l2 norm.
    pub fn lipschitz_bound(&self) -> f64 {
        self.pieces
            .iter()
            .map(AffinePiece::norm)
            .fold(0.0, f64::max)
    }

    /// Same coefficients, offsets shifted piecewise by `noise`.
    pub fn with_offset_noise(&self, noise: &[f64]) -> Result<PwaObjective> {
        if noise.len() != self.pieces.len() {
            return Err(Error::DimensionMismatch {
                expected: self.pieces.len(),
                actual: noise.len(),
            });
        }
        let pieces = self
            .pieces
            .iter()
            .zip(noise)
            .map(|(p, w)| AffinePiece::new(p.a.clone(), p.b + w))
            .collect();
        PwaObjective::new(pieces)
    }

    /// Objective restricted to the first `m` pieces. Nested sweeps over the
    /// piece count use this so a smaller instance is a strict prefix of a
    /// larger one.
    pub fn prefix(&self, m: usize) -> Result<PwaObjective> {
        if m == 0 || m > self.pieces.len() {
            return Err(Error::invalid(format!(
                "prefix size {m} out of range 1..={}",
                self.pieces.len()
            )));
        }
        Ok(PwaObjective { pieces: self.pieces[..m].to_vec(), d: self.d })
    }
}
