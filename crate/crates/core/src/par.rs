//! Order-preserving data-parallel helpers. Without the `parallel` feature
//! every helper runs sequentially and returns the same result.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a computation may be spread across threads.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    /// Parallel when the work is large enough to pay for it.
    #[default]
    Auto,
    Sequential,
    Parallel,
}

impl Parallelism {
    /// Resolves `Auto` against a size estimate and the compiled features.
    pub fn enabled(self, large: bool) -> bool {
        cfg!(feature = "parallel")
            && match self {
                Parallelism::Auto => large,
                Parallelism::Sequential => false,
                Parallelism::Parallel => true,
            }
    }
}

/// `items.map(f)` with results in input order.
pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// First item (in input order) whose mapped value is `Some`.
pub fn find_map_first<T, R, F>(items: &[T], parallel: bool, f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().find_map_first(f);
    }
    let _ = parallel;
    items.iter().find_map(f)
}

/// Folds `0..len` in fixed-size chunks, each chunk folded sequentially from
/// `init()`, and returns the per-chunk accumulators in chunk order.
pub fn fold_chunks<A, F, I>(len: u64, chunk: u64, parallel: bool, init: I, step: F) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, u64) + Sync + Send,
{
    let chunk = chunk.max(1);
    let starts: Vec<u64> = (0..len.div_ceil(chunk)).map(|c| c * chunk).collect();
    map(&starts, parallel, |&start| {
        let mut acc = init();
        for i in start..(start + chunk).min(len) {
            step(&mut acc, i);
        }
        acc
    })
}
