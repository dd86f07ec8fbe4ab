//! Execution strategy for the data-parallel sweeps.
//!
//! With the `parallel` feature off, `Execution::Parallel` silently runs the
//! sequential path, so callers never need to branch on the feature.

use std::sync::atomic::{AtomicUsize, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `items.iter().map(f).collect()`, order preserved.
pub fn map_collect<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Maximum of `f` over `items`, stopping as soon as some value reaches
/// `bound`. The result is the true maximum whenever `bound` is an upper bound
/// for `f`; it is 0 for an empty slice.
pub fn max_until<T, F>(exec: Execution, items: &[T], bound: usize, f: F) -> usize
where
    T: Sync,
    F: Fn(&T) -> usize + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        let best = AtomicUsize::new(0);
        items.par_iter().any(|x| {
            let v = f(x);
            best.fetch_max(v, Ordering::Relaxed);
            v >= bound
        });
        return best.into_inner();
    }
    let _ = exec;
    let best = AtomicUsize::new(0);
    for x in items {
        let v = f(x);
        best.fetch_max(v, Ordering::Relaxed);
        if v >= bound {
            break;
        }
    }
    best.into_inner()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let xs: Vec<usize> = (0..1000).map(|i| (i * 7919) % 613).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(max_until(exec, &xs, usize::MAX, |&x| x), 612);
            assert_eq!(max_until(exec, &xs, 100, |&x| x.min(100)), 100);
            assert_eq!(map_collect(exec, &xs, |&x| x + 1), xs.iter().map(|x| x + 1).collect::<Vec<_>>());
        }
        assert_eq!(max_until(Execution::Parallel, &[] as &[usize], 3, |&x| x), 0);
    }
}
