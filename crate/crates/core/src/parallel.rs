//! Index-ordered parallel map with a worker cap from `PIVOTGROWTH_THREADS`.

use rayon::prelude::*;

pub const THREADS_ENV: &str = "PIVOTGROWTH_THREADS";

/// Worker count: `PIVOTGROWTH_THREADS` when set to a positive integer,
/// otherwise rayon's default.
pub fn worker_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// `(0..count).map(f)` evaluated in parallel; output is in index order.
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let threads = worker_count();
    if threads <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| (0..count).into_par_iter().map(&f).collect()),
        Err(_) => (0..count).map(f).collect(),
    }
}
