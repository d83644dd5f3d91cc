//! Worker-pool configuration shared by the scans.

/// Environment variable that overrides the default worker count.
pub const THREADS_ENV: &str = "SUMSETS_THREADS";

/// Worker count: the explicit value, else [`THREADS_ENV`], else the
/// available parallelism.
pub fn resolve_threads(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` inside a dedicated pool of `threads` workers.
pub fn install<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
