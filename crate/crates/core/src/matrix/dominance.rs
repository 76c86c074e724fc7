use alloc::vec::Vec;

use super::payoff::PayoffMatrix;

/// A matrix with strictly dominated strategies removed. `rows[k]` and
/// `cols[k]` are the original indices of the surviving strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct PrunedGame {
    pub matrix: PayoffMatrix,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Iterated elimination of strictly dominated strategies: a row goes when
/// another row is smaller in every column (rows minimize), a column goes
/// when another column is larger in every row (columns maximize).
pub fn dominance_prune(a: &PayoffMatrix) -> PrunedGame {
    let mut rows: Vec<usize> = (0..a.n_rows()).collect();
    let mut cols: Vec<usize> = (0..a.n_cols()).collect();
    loop {
        let dead_row = rows.iter().position(|&r| {
            rows.iter().any(|&other| other != r && cols.iter().all(|&c| a.value(other, c) < a.value(r, c)))
        });
        if let Some(k) = dead_row {
            rows.remove(k);
            continue;
        }
        let dead_col = cols.iter().position(|&c| {
            cols.iter().any(|&other| other != c && rows.iter().all(|&r| a.value(r, other) > a.value(r, c)))
        });
        if let Some(k) = dead_col {
            cols.remove(k);
            continue;
        }
        break;
    }
    PrunedGame { matrix: a.submatrix(&rows, &cols), rows, cols }
}
