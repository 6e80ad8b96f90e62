//! Execution strategy for the exhaustive sweeps.
//!
//! Every sweep is a fold over an index range followed by a commutative,
//! associative merge, so the parallel and sequential strategies produce
//! identical results regardless of how rayon splits the range. Without the
//! `parallel` feature, [`Exec::Parallel`] runs sequentially.

use std::ops::Range;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    /// Whether this strategy actually runs on the rayon pool in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Fold `range` with per-worker accumulators created by `init`, then merge.
    pub fn fold<A, I, F, M>(self, range: Range<usize>, init: I, fold: F, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, usize) -> A + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().fold(&init, &fold).reduce(&init, &merge);
        }
        let _ = &merge;
        range.fold(init(), fold)
    }

    /// Map each index and collect in order.
    pub fn map_collect<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// True iff `pred` holds for every index.
    pub fn all<F>(self, range: Range<usize>, pred: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().all(pred);
        }
        range.into_iter().all(pred)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let sum = |e: Exec| e.fold(0..10_000, || 0u64, |a, i| a + (i as u64 * i as u64) % 97, |a, b| a + b);
        assert_eq!(sum(Exec::Parallel), sum(Exec::Sequential));
        let v = Exec::Parallel.map_collect(0..100, |i| i * 2);
        assert_eq!(v, Exec::Sequential.map_collect(0..100, |i| i * 2));
        assert!(Exec::Parallel.all(0..100, |i| i < 100));
        assert!(!Exec::Sequential.all(0..100, |i| i < 99));
    }
}
