//! Batch evaluation over seeded instance indices. The lemma batteries and
//! acceptance sweeps are embarrassingly parallel; `map` fans out over rayon
//! when the `parallel` feature is on and degrades to the sequential loop
//! otherwise.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every index in `0..n`, sequentially.
pub fn map_seq<R>(n: usize, f: impl Fn(usize) -> R) -> Vec<R> {
    (0..n).map(f).collect()
}

/// Applies `f` to every index in `0..n`, in parallel when available. Results
/// come back in index order either way.
pub fn map<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(n, f)
    }
}
