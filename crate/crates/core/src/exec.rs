//! Pluggable execution for embarrassingly parallel work.
//!
//! Payoff-matrix entries and sweep points are independent. The core runs
//! them one after another; a threaded executor can be supplied by callers
//! that have `std`.

use alloc::vec::Vec;

pub trait Executor: Sync {
    /// Apply `f` to every item. Output order must match input order.
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send;
}

/// Runs everything on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        items.into_iter().map(f).collect()
    }
}
