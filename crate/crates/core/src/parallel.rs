//! Data-parallel sweeps with a sequential fallback.
//!
//! With the `parallel` feature (the default) [`Execution::Parallel`] runs on
//! the rayon global pool. Without it, `Parallel` degrades to the sequential
//! path, so callers never need their own `cfg` switches.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Smallest index in `range` for which `check` reports a failure.
pub fn first_failure<E, F>(range: Range<u64>, exec: Execution, check: F) -> Option<(u64, E)>
where
    E: Send,
    F: Fn(u64) -> Option<E> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            range
                .into_par_iter()
                .find_map_first(|i| check(i).map(|e| (i, e)))
        }
        _ => range.into_iter().find_map(|i| check(i).map(|e| (i, e))),
    }
}

/// Order-preserving map over a slice.
pub fn map_slice<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_find_the_same_first_failure() {
        let check = |i: u64| (i % 97 == 41 && i > 500).then_some(i * 2);
        let seq = first_failure(0..10_000, Execution::Sequential, check);
        let par = first_failure(0..10_000, Execution::Parallel, check);
        assert_eq!(seq, Some((526, 1052)));
        assert_eq!(seq, par);
    }

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let seq = map_slice(&xs, Execution::Sequential, |x| x * x);
        let par = map_slice(&xs, Execution::Parallel, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);
    }
}
