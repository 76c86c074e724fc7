use alloc::vec::Vec;

use crate::comms::ModulationScheme;
use crate::error::{Error, Result};
use crate::exec::{Executor, Sequential};
use crate::power::{solve_power_game_from, AllocationProfile, PowerGameOptions, PowerGameResult, ScenarioConfig};

/// How much to trust one matrix entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntryStatus {
    pub converged: bool,
    pub existence_certified: bool,
    pub residual: f64,
    pub iterations: usize,
}

impl EntryStatus {
    /// Status of entries supplied from outside (e.g. imported from CSV),
    /// which are taken at face value.
    pub const GIVEN: EntryStatus = EntryStatus { converged: true, existence_certified: true, residual: 0.0, iterations: 0 };
}

/// Payoff matrix of the modulation game: entry `(i, j)` is the equilibrium
/// outcome when Team A uses `row_labels[i]` and Team B `col_labels[j]`.
/// Team A (rows) minimizes, Team B (columns) maximizes.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix {
    rows: Vec<u32>,
    cols: Vec<u32>,
    values: Vec<f64>,
    status: Vec<EntryStatus>,
}

impl PayoffMatrix {
    pub fn new(row_labels: Vec<u32>, col_labels: Vec<u32>, values: Vec<f64>) -> Result<Self> {
        let status = alloc::vec![EntryStatus::GIVEN; values.len()];
        Self::with_status(row_labels, col_labels, values, status)
    }

    pub fn with_status(row_labels: Vec<u32>, col_labels: Vec<u32>, values: Vec<f64>, status: Vec<EntryStatus>) -> Result<Self> {
        if row_labels.is_empty() || col_labels.is_empty() {
            return Err(Error::Precondition("payoff matrix needs at least one row and one column"));
        }
        if values.len() != row_labels.len() * col_labels.len() || status.len() != values.len() {
            return Err(Error::Precondition("payoff matrix dimensions do not match its labels"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("payoff matrix entries must be finite"));
        }
        Ok(Self { rows: row_labels, cols: col_labels, values, status })
    }

    /// Matrix labelled `1..=n` by `1..=m`, built from row slices.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let m = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Precondition("ragged payoff matrix"));
        }
        let values = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new((1..=rows.len() as u32).collect(), (1..=m as u32).collect(), values)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.cols.len();
        &self.values[i * m..(i + 1) * m]
    }

    /// Row-major entries.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row_labels(&self) -> &[u32] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[u32] {
        &self.cols
    }

    pub fn status(&self, i: usize, j: usize) -> &EntryStatus {
        &self.status[i * self.cols.len() + j]
    }

    pub fn all_converged(&self) -> bool {
        self.status.iter().all(|s| s.converged)
    }

    pub fn all_existence_certified(&self) -> bool {
        self.status.iter().all(|s| s.existence_certified)
    }

    /// Every entry plus `c`.
    pub fn shifted(&self, c: f64) -> Self {
        Self { values: self.values.iter().map(|v| v + c).collect(), ..self.clone() }
    }

    /// Every entry times `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self { values: self.values.iter().map(|v| v * k).collect(), ..self.clone() }
    }

    /// The game seen from the other side: `-A^T`, columns become rows.
    pub fn negated_transpose(&self) -> Self {
        let (n, m) = (self.n_rows(), self.n_cols());
        let mut values = Vec::with_capacity(n * m);
        let mut status = Vec::with_capacity(n * m);
        for j in 0..m {
            for i in 0..n {
                values.push(-self.value(i, j));
                status.push(*self.status(i, j));
            }
        }
        Self { rows: self.cols.clone(), cols: self.rows.clone(), values, status }
    }

    /// Keep only the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut values = Vec::with_capacity(rows.len() * cols.len());
        let mut status = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                values.push(self.value(i, j));
                status.push(*self.status(i, j));
            }
        }
        Self {
            rows: rows.iter().map(|&i| self.rows[i]).collect(),
            cols: cols.iter().map(|&j| self.cols[j]).collect(),
            values,
            status,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PayoffOptions {
    pub power: PowerGameOptions,
    /// Refuse to return a matrix with any non-converged entry.
    pub strict: bool,
}

/// A payoff matrix together with the power-game solutions behind it, in
/// row-major order.
#[derive(Debug, Clone)]
pub struct PayoffBuild {
    pub matrix: PayoffMatrix,
    pub results: Vec<PowerGameResult>,
}

impl PayoffBuild {
    pub fn profiles(&self) -> Vec<AllocationProfile> {
        self.results.iter().map(|r| r.profile).collect()
    }
}

/// Solve the power game for every pair of menu entries.
pub fn build_payoff_matrix(config: &ScenarioConfig, opts: &PayoffOptions) -> Result<PayoffMatrix> {
    build_payoff_matrix_with(config, opts, &Sequential, None).map(|b| b.matrix)
}

/// As [`build_payoff_matrix`], running entries through `exec` and
/// optionally starting each entry from a previous profile (row-major,
/// one per entry).
pub fn build_payoff_matrix_with<E: Executor>(
    config: &ScenarioConfig,
    opts: &PayoffOptions,
    exec: &E,
    warm: Option<&[AllocationProfile]>,
) -> Result<PayoffBuild> {
    config.validate()?;
    let schemes_a = config.schemes(crate::power::Team::A)?;
    let schemes_b = config.schemes(crate::power::Team::B)?;
    let (n, m) = (schemes_a.len(), schemes_b.len());
    if let Some(w) = warm {
        if w.len() != n * m {
            return Err(Error::Precondition("warm-start profiles must match the matrix size"));
        }
    }
    let jobs: Vec<(ModulationScheme, ModulationScheme, AllocationProfile)> = (0..n * m)
        .map(|k| {
            let start = warm.map_or_else(AllocationProfile::uniform, |w| w[k]);
            (schemes_a[k / m], schemes_b[k % m], start)
        })
        .collect();
    let power = opts.power;
    let results = exec.map(jobs, |(a, b, start)| solve_power_game_from(config, &a, &b, &power, &start));
    let results: Vec<PowerGameResult> = results.into_iter().collect::<Result<_>>()?;

    if opts.strict {
        if let Some((k, r)) = results.iter().enumerate().find(|(_, r)| !r.converged) {
            return Err(Error::Uncertified { size_a: config.menu_a[k / m], size_b: config.menu_b[k % m], residual: r.residual });
        }
    }
    let values = results.iter().map(|r| r.value).collect();
    let status = results
        .iter()
        .map(|r| EntryStatus {
            converged: r.converged,
            existence_certified: r.existence_certified,
            residual: r.residual,
            iterations: r.iterations,
        })
        .collect();
    let matrix = PayoffMatrix::with_status(config.menu_a.clone(), config.menu_b.clone(), values, status)?;
    Ok(PayoffBuild { matrix, results })
}
