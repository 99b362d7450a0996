//! Thread-pool [`Driver`] for the λ₂ search.

use fiedler_core::search::{Accumulator, Driver};
use fiedler_core::{Graph, Result};
use rayon::prelude::*;

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "FIEDLER_THREADS";

/// `--threads`, else `$FIEDLER_THREADS`, else the available parallelism.
pub fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Evaluates chunks on a dedicated rayon pool. Partial results are merged
/// with [`Accumulator::merge`], so the outcome is the same for any thread
/// count.
pub struct Parallel {
    pool: rayon::ThreadPool,
}

impl Parallel {
    pub fn new(threads: usize) -> Self {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool");
        Parallel { pool }
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Driver for Parallel {
    fn run(&self, chunks: &mut (dyn Iterator<Item = Vec<Graph>> + Send)) -> Result<Accumulator> {
        self.pool.install(|| {
            chunks
                .par_bridge()
                .map(|chunk| Accumulator::eval(&chunk))
                .try_reduce(Accumulator::default, |a, b| Ok(a.merge(b)))
        })
    }
}
