//! Deterministic data-parallel helpers.
//!
//! All parallel loops in this crate run through `map_indexed` so that results
//! are assembled in index order and reductions are performed as a fixed
//! pairwise tree. The same chunking is used with and without rayon, so a
//! sequential run is bit-identical to a parallel one at equal precision.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, Ordering};

/// Execution strategy for data-parallel inner loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    /// Use the rayon thread pool (falls back to sequential when the crate is
    /// built without the `parallel` feature).
    Parallel,
    Sequential,
}

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force all default-mode loops sequential at runtime (benchmark comparisons;
/// the `parallel` feature decides what Parallel mode can do at compile time).
pub fn force_sequential(yes: bool) {
    FORCE_SEQUENTIAL.store(yes, Ordering::SeqCst);
}

impl Default for ExecMode {
    fn default() -> Self {
        if FORCE_SEQUENTIAL.load(Ordering::Relaxed) {
            return ExecMode::Sequential;
        }
        #[cfg(feature = "parallel")]
        {
            ExecMode::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}

/// Map `f` over `0..n`, returning results in index order.
pub fn map_indexed<T, F>(n: usize, mode: ExecMode, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (0..n).into_par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => (0..n).map(f).collect(),
        ExecMode::Sequential => (0..n).map(f).collect(),
    }
}

/// Pairwise (balanced tree) reduction over an ordered list of partials.
/// The association order depends only on `items.len()`.
pub fn tree_reduce<T, F>(mut items: Vec<T>, combine: F) -> Option<T>
where
    F: Fn(T, T) -> T,
{
    if items.is_empty() {
        return None;
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(combine(a, b)),
                None => next.push(a),
            }
        }
        items = next;
    }
    items.pop()
}

/// Chunked deterministic map-reduce over `0..n`: each fixed-size chunk is
/// folded sequentially in index order, chunk partials are combined by
/// [`tree_reduce`]. `zero` creates the per-chunk accumulator.
pub fn chunked_sum<T, Z, F, C>(n: usize, chunk: usize, mode: ExecMode, zero: Z, fold: F, combine: C) -> T
where
    T: Send,
    Z: Fn() -> T + Sync + Send,
    F: Fn(T, usize) -> T + Sync + Send,
    C: Fn(T, T) -> T,
{
    assert!(chunk > 0);
    let n_chunks = n.div_ceil(chunk).max(1);
    let partials = map_indexed(n_chunks, mode, |c| {
        let lo = c * chunk;
        let hi = ((c + 1) * chunk).min(n);
        (lo..hi).fold(zero(), |acc, i| fold(acc, i))
    });
    tree_reduce(partials, combine).unwrap_or_else(zero)
}
