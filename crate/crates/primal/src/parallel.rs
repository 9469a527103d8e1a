//! Rayon-backed executor for the verification engine.

use primal_core::Executor;
use rayon::prelude::*;

/// Environment variable capping the worker count.
pub const WORKERS_ENV: &str = "PRIMAL_MAX_WORKERS";

/// A dedicated thread pool; results keep input order.
pub struct Pool {
    pool: rayon::ThreadPool,
}

impl Pool {
    pub fn new(workers: usize) -> Self {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .expect("thread pool");
        Pool { pool }
    }

    /// Sized by `PRIMAL_MAX_WORKERS`, else by the available parallelism.
    pub fn from_env() -> Self {
        Pool::new(workers_from(std::env::var(WORKERS_ENV).ok().as_deref()))
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

/// Unset, unparsable or zero values fall back to the machine's parallelism.
pub fn workers_from(value: Option<&str>) -> usize {
    let default = std::thread::available_parallelism().map_or(1, |n| n.get());
    match value.and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(n) if n > 0 => n,
        _ => default,
    }
}

impl Executor for Pool {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.pool.install(|| items.par_iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_parsing() {
        assert_eq!(workers_from(Some("3")), 3);
        assert!(workers_from(Some("0")) >= 1);
        assert!(workers_from(Some("many")) >= 1);
        assert!(workers_from(None) >= 1);
    }

    #[test]
    fn keeps_order() {
        let pool = Pool::new(4);
        let items: Vec<u32> = (0..1000).collect();
        assert_eq!(
            pool.map(&items, |x| x * 2),
            items.iter().map(|x| x * 2).collect::<Vec<_>>()
        );
    }
}
