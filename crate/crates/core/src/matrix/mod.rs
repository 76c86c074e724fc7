//! The modulation game: a finite zero-sum game whose entries are power-game
//! equilibria.

mod dominance;
mod lp;
mod payoff;
mod zero_sum;

pub use dominance::{dominance_prune, PrunedGame};
pub use payoff::{build_payoff_matrix, build_payoff_matrix_with, EntryStatus, PayoffBuild, PayoffMatrix, PayoffOptions};
pub use zero_sum::{
    expected_payoff, interchangeability_check, pure_saddle, saddle_violation, solve_zero_sum, EquilibriumKind,
    EquilibriumSolution, MixedStrategy, SADDLE_TOLERANCE,
};
