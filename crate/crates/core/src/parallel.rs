//! Data-parallel helpers. With the `parallel` feature (default) work is
//! spread over a rayon pool; without it every helper runs sequentially and
//! produces identical output.

/// How a batch of independent work items is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Global rayon pool, or a dedicated pool of `jobs` threads.
    #[default]
    Parallel,
    Jobs(usize),
}

impl Execution {
    /// `None` or `Some(0)` means the global pool.
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(1) => Execution::Sequential,
            Some(k) if k > 1 => Execution::Jobs(k),
            _ => Execution::Parallel,
        }
    }

    /// Maps `f` over `items`, preserving input order in the output.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(feature = "parallel")]
            Execution::Jobs(k) => {
                use rayon::prelude::*;
                match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
                    Ok(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
                    Err(_) => items.into_par_iter().map(f).collect(),
                }
            }
            #[cfg(not(feature = "parallel"))]
            Execution::Parallel | Execution::Jobs(_) => items.into_iter().map(f).collect(),
        }
    }
}
