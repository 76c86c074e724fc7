//! Nested zero-sum games for two jamming teams.
//!
//! Two teams of two mobile agents split their transmit power between
//! talking to a teammate and jamming the receivers of the other team.
//! For a fixed pair of QAM constellation sizes the split is a
//! continuous-kernel zero-sum game ([`power`]); sweeping the pairs builds
//! a finite payoff matrix whose saddle point picks the constellations
//! ([`matrix`]). [`sim`] strings those games together along a trajectory.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! parallel drivers live in the `jamteams` companion crate.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is the NaN-rejecting check used throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod comms;
mod error;
pub mod exec;
pub mod matrix;
pub mod power;
mod root;
pub mod sim;

pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
