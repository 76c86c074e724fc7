use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::lp::minimizer_strategy;
use super::payoff::PayoffMatrix;

/// Tolerance on security levels, saddle inequalities and duality gaps.
pub const SADDLE_TOLERANCE: f64 = 1e-9;

/// Probability vector over a modulation menu.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy(Vec<f64>);

impl MixedStrategy {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if weights.is_empty() || weights.iter().any(|&w| !(w >= 0.0)) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::Precondition("strategy weights must be non-negative and sum to one"));
        }
        Ok(Self(weights))
    }

    pub fn pure(len: usize, index: usize) -> Self {
        let mut w = vec![0.0; len];
        w[index] = 1.0;
        Self(w)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the heaviest weight; the lowest index wins ties.
    pub fn mode(&self) -> usize {
        let mut best = 0;
        for (i, &w) in self.0.iter().enumerate() {
            if w > self.0[best] {
                best = i;
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumKind {
    Pure { row: usize, col: usize },
    Mixed,
}

impl EquilibriumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EquilibriumKind::Pure { .. } => "pure",
            EquilibriumKind::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSolution {
    /// Team A, the minimizer.
    pub row: MixedStrategy,
    /// Team B, the maximizer.
    pub col: MixedStrategy,
    pub value: f64,
    pub kind: EquilibriumKind,
    /// False when some entry of the matrix came from a non-converged power game.
    pub certified: bool,
}

impl EquilibriumSolution {
    /// `(row size, column size)` played with the largest probability.
    pub fn chosen_labels(&self, a: &PayoffMatrix) -> (u32, u32) {
        (a.row_labels()[self.row.mode()], a.col_labels()[self.col.mode()])
    }
}

/// `x^T A y`.
pub fn expected_payoff(a: &PayoffMatrix, x: &[f64], y: &[f64]) -> f64 {
    (0..a.n_rows()).map(|i| x[i] * a.row(i).iter().zip(y).map(|(v, w)| v * w).sum::<f64>()).sum()
}

/// How far `(x, y)` is from being a saddle point: the larger of the gain
/// the maximizer could get by deviating and the gain the minimizer could.
pub fn saddle_violation(a: &PayoffMatrix, x: &[f64], y: &[f64]) -> f64 {
    let v = expected_payoff(a, x, y);
    let best_col = (0..a.n_cols())
        .map(|j| (0..a.n_rows()).map(|i| x[i] * a.value(i, j)).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    let best_row = (0..a.n_rows())
        .map(|i| a.row(i).iter().zip(y).map(|(v, w)| v * w).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    (best_col - v).max(v - best_row)
}

/// Lexicographically first pure saddle point `(i, j, value)`, if the row
/// player's security level `min_i max_j A_ij` equals the column player's
/// `max_j min_i A_ij`.
pub fn pure_saddle(a: &PayoffMatrix) -> Option<(usize, usize, f64)> {
    let (n, m) = (a.n_rows(), a.n_cols());
    let row_max: Vec<f64> = (0..n).map(|i| a.row(i).iter().copied().fold(f64::NEG_INFINITY, f64::max)).collect();
    let col_min: Vec<f64> = (0..m).map(|j| (0..n).map(|i| a.value(i, j)).fold(f64::INFINITY, f64::min)).collect();
    let upper = row_max.iter().copied().fold(f64::INFINITY, f64::min);
    let lower = col_min.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if (upper - lower).abs() > SADDLE_TOLERANCE {
        return None;
    }
    for (i, &top) in row_max.iter().enumerate() {
        for (j, &bottom) in col_min.iter().enumerate() {
            let v = a.value(i, j);
            if v >= top - SADDLE_TOLERANCE && v <= bottom + SADDLE_TOLERANCE {
                return Some((i, j, v));
            }
        }
    }
    None
}

/// Saddle point in pure strategies when one exists, otherwise in mixed
/// strategies from the two players' linear programs.
pub fn solve_zero_sum(a: &PayoffMatrix) -> Result<EquilibriumSolution> {
    let certified = a.all_converged();
    if let Some((i, j, value)) = pure_saddle(a) {
        return Ok(EquilibriumSolution {
            row: MixedStrategy::pure(a.n_rows(), i),
            col: MixedStrategy::pure(a.n_cols(), j),
            value,
            kind: EquilibriumKind::Pure { row: i, col: j },
            certified,
        });
    }
    let (x, upper) = minimizer_strategy(a.values(), a.n_rows(), a.n_cols())?;
    let flipped = a.negated_transpose();
    let (y, neg_lower) = minimizer_strategy(flipped.values(), flipped.n_rows(), flipped.n_cols())?;
    let lower = -neg_lower;
    if (upper - lower).abs() > SADDLE_TOLERANCE {
        return Err(Error::Internal("duality gap of matrix-game LPs too large"));
    }
    Ok(EquilibriumSolution {
        row: MixedStrategy(x),
        col: MixedStrategy(y),
        value: upper,
        kind: EquilibriumKind::Mixed,
        certified,
    })
}

/// Whether the two cross pairings of `eq1` and `eq2` are saddle points too.
/// Both inputs must themselves be saddle points of `a`.
pub fn interchangeability_check(a: &PayoffMatrix, eq1: &EquilibriumSolution, eq2: &EquilibriumSolution) -> Result<bool> {
    let fits = |e: &EquilibriumSolution| e.row.len() == a.n_rows() && e.col.len() == a.n_cols();
    if !fits(eq1) || !fits(eq2) {
        return Err(Error::Precondition("strategy sizes do not match the matrix"));
    }
    for e in [eq1, eq2] {
        if saddle_violation(a, e.row.weights(), e.col.weights()) > SADDLE_TOLERANCE {
            return Err(Error::Precondition("input is not a saddle point of the matrix"));
        }
    }
    Ok(saddle_violation(a, eq1.row.weights(), eq2.col.weights()) <= SADDLE_TOLERANCE
        && saddle_violation(a, eq2.row.weights(), eq1.col.weights()) <= SADDLE_TOLERANCE)
}
