//! Data-parallel helpers.
//!
//! With the `parallel` feature the helpers fan out over rayon's global pool;
//! without it (or with [`Exec::Sequential`]) they run on the calling thread.
//! Results are always returned in input order, so output never depends on
//! scheduling.

use std::ops::Range;

/// Execution policy for the data-parallel kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this policy actually runs on several threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Below this many items the parallel path is not worth the fork.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 48;

pub fn map_range<T, F>(exec: Exec, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() && range.len() >= PAR_THRESHOLD {
            use rayon::prelude::*;
            return range.into_par_iter().map(f).collect();
        }
    }
    let _ = exec;
    range.map(f).collect()
}

/// Maps `f` over `items`, regardless of count (use for coarse work items).
pub fn map_items<I, T, F>(exec: Exec, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() && items.len() > 1 {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Like [`map_items`] but over an index range, for a few heavy tasks.
pub fn map_tasks<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() && n > 1 {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    let _ = exec;
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_stable() {
        let a = map_range(Exec::Parallel, 0..500, |i| i * i);
        let b = map_range(Exec::Sequential, 0..500, |i| i * i);
        assert_eq!(a, b);
        let c = map_tasks(Exec::Parallel, 7, |i| i + 1);
        assert_eq!(c, vec![1, 2, 3, 4, 5, 6, 7]);
    }
}
