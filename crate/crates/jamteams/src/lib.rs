//! File formats, threading and command-line plumbing around
//! [`jamteams_core`].

pub mod error;
pub mod exec;
pub mod number;
pub mod scenario;
pub mod tables;

pub use error::InputError;
pub use exec::ThreadedExecutor;
pub use number::fmt_num;
pub use scenario::{dump_scenario, parse_scenario, ScenarioError};
