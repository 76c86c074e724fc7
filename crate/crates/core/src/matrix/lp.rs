//! Dense tableau simplex for the minimizing player of a matrix game.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;

/// Optimal mixed strategy of the row player who minimizes `x^T A y`, and
/// the game value. `values` is row-major with `rows * cols` entries.
///
/// Shifts `A` to a strictly positive `B`, then solves
/// `max sum(p)  s.t.  B^T p <= 1, p >= 0`; the strategy is `p / sum(p)`
/// and the value of `B` is `1 / sum(p)`.
pub(crate) fn minimizer_strategy(values: &[f64], rows: usize, cols: usize) -> Result<(Vec<f64>, f64)> {
    debug_assert_eq!(values.len(), rows * cols);
    let lowest = values.iter().copied().fold(f64::INFINITY, f64::min);
    let shift = 1.0 - lowest;

    // constraint j: sum_i p_i B_ij + slack_j = 1
    let width = rows + cols + 1;
    let mut tab = vec![0.0; (cols + 1) * width];
    for j in 0..cols {
        let row = &mut tab[j * width..(j + 1) * width];
        for i in 0..rows {
            row[i] = values[i * cols + j] + shift;
        }
        row[rows + j] = 1.0;
        row[width - 1] = 1.0;
    }
    // objective row holds reduced costs of max sum(p)
    let obj = cols * width;
    for i in 0..rows {
        tab[obj + i] = -1.0;
    }
    let mut basis: Vec<usize> = (rows..rows + cols).collect();

    for _ in 0..10_000 {
        // Bland: lowest-index improving column
        let Some(enter) = (0..width - 1).find(|&c| tab[obj + c] < -PIVOT_EPS) else {
            let mut p = vec![0.0; rows];
            for (j, &b) in basis.iter().enumerate() {
                if b < rows {
                    p[b] = tab[j * width + width - 1];
                }
            }
            let total: f64 = p.iter().sum();
            if !(total > 0.0) {
                return Err(Error::Internal("degenerate matrix-game LP"));
            }
            let strategy: Vec<f64> = p.iter().map(|&v| v.max(0.0) / total).collect();
            let norm: f64 = strategy.iter().sum();
            return Ok((strategy.iter().map(|v| v / norm).collect(), 1.0 / total - shift));
        };
        let mut leave: Option<(usize, f64)> = None;
        for j in 0..cols {
            let a = tab[j * width + enter];
            if a > PIVOT_EPS {
                let ratio = tab[j * width + width - 1] / a;
                let better = match leave {
                    None => true,
                    Some((lj, lr)) => ratio < lr - 1e-15 || (ratio <= lr + 1e-15 && basis[j] < basis[lj]),
                };
                if better {
                    leave = Some((j, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            return Err(Error::Internal("unbounded matrix-game LP"));
        };
        let pivot = tab[pivot_row * width + enter];
        for c in 0..width {
            tab[pivot_row * width + c] /= pivot;
        }
        for r in 0..=cols {
            if r == pivot_row {
                continue;
            }
            let factor = tab[r * width + enter];
            if factor != 0.0 {
                for c in 0..width {
                    tab[r * width + c] -= factor * tab[pivot_row * width + c];
                }
            }
        }
        basis[pivot_row] = enter;
    }
    Err(Error::Internal("simplex iteration limit"))
}
