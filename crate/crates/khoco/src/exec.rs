use std::sync::Arc;
use std::time::{Duration, Instant};

use khoco_core::distance::{Executor, Leaf};
use khoco_core::{Budget, NodeBudget};
use rayon::prelude::*;

pub const THREADS_VAR: &str = "KHOCO_THREADS";
pub const BUDGET_VAR: &str = "KHOCO_BUDGET_MS";

fn env_u64(var: &str) -> Option<u64> {
    std::env::var(var).ok().and_then(|s| s.trim().parse().ok())
}

/// Runs search subtrees on a rayon pool.
#[derive(Clone, Default)]
pub struct RayonExecutor {
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl RayonExecutor {
    /// Global pool, or a dedicated one of `KHOCO_THREADS` workers.
    pub fn from_env() -> Self {
        match env_u64(THREADS_VAR) {
            Some(n) if n > 0 => Self::with_threads(n as usize),
            _ => Self::default(),
        }
    }

    pub fn with_threads(n: usize) -> Self {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool");
        RayonExecutor { pool: Some(Arc::new(pool)) }
    }

    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(p) => p.install(f),
            None => f(),
        }
    }
}

impl Executor for RayonExecutor {
    fn map(&self, count: usize, f: &(dyn Fn(usize) -> Leaf + Sync)) -> Vec<Leaf> {
        self.install(|| (0..count).into_par_iter().map(f).collect())
    }
}

/// Node counter with an optional wall-clock deadline.
#[derive(Debug)]
pub struct DeadlineBudget {
    nodes: NodeBudget,
    deadline: Option<Instant>,
    pub limit_ms: Option<u64>,
}

impl DeadlineBudget {
    pub fn new(limit_ms: Option<u64>) -> Self {
        DeadlineBudget {
            nodes: NodeBudget::new(None),
            deadline: limit_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
            limit_ms,
        }
    }

    /// Deadline from `KHOCO_BUDGET_MS`, else `default_ms`.
    pub fn from_env(default_ms: Option<u64>) -> Self {
        Self::new(env_u64(BUDGET_VAR).or(default_ms))
    }

    pub fn env_limit(default_ms: Option<u64>) -> Option<u64> {
        env_u64(BUDGET_VAR).or(default_ms)
    }
}

impl Budget for DeadlineBudget {
    fn exhausted(&self) -> bool {
        self.nodes.exhausted() || self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn spend(&self, n: u64) {
        self.nodes.spend(n);
    }

    fn nodes(&self) -> u64 {
        self.nodes.nodes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use khoco_core::distance::Sequential;

    #[test]
    fn pool_matches_sequential() {
        let f = |i: usize| Leaf { best: None, truncated: i % 3 == 0 };
        let a: Vec<bool> = RayonExecutor::with_threads(3).map(10, &f).into_iter().map(|l| l.truncated).collect();
        let b: Vec<bool> = Sequential.map(10, &f).into_iter().map(|l| l.truncated).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn deadline_trips() {
        let b = DeadlineBudget::new(Some(0));
        assert!(b.exhausted());
        let b = DeadlineBudget::new(None);
        b.spend(5);
        assert!(!b.exhausted());
        assert_eq!(b.nodes(), 5);
    }
}
