use jamteams_core::Executor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::InputError;

/// Environment variable that caps the worker count.
pub const THREADS_VAR: &str = "JAMTEAMS_THREADS";

/// Executor backed by a rayon pool. Output order follows input order, so
/// results do not depend on the thread count.
pub struct ThreadedExecutor {
    pool: ThreadPool,
}

impl ThreadedExecutor {
    /// `None` lets rayon pick one thread per core.
    pub fn new(threads: Option<usize>) -> Result<Self, InputError> {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| InputError::Threads(e.to_string()))?;
        Ok(Self { pool })
    }

    /// Pool sized by `JAMTEAMS_THREADS` when set.
    pub fn from_env() -> Result<Self, InputError> {
        let threads = match std::env::var(THREADS_VAR) {
            Ok(raw) => match raw.trim().parse::<usize>() {
                Ok(n) if n > 0 => Some(n),
                _ => return Err(InputError::Threads(format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))),
            },
            Err(_) => None,
        };
        Self::new(threads)
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for ThreadedExecutor {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        self.pool.install(|| items.into_par_iter().map(f).collect())
    }
}
