//! Row-parallel matrix construction with a sequential fallback.
//!
//! Every dense kernel in this crate fills a row-major buffer where each row
//! is independent of the others, so rows are the natural unit of work. With
//! the `parallel` feature enabled (the default) rows are distributed over
//! the rayon thread pool once the output is large enough to amortize the
//! scheduling overhead; smaller outputs and `parallel = false` use a plain
//! loop. Exact rational arithmetic makes both paths bit-identical.

use crate::lattice::TruthValue;

/// Outputs below this many cells are always filled sequentially.
const PAR_MIN_CELLS: usize = 256;

/// Builds `n_rows` rows of `n_cols` values each, concatenated row-major.
/// `f(i)` must return row `i` with exactly `n_cols` entries.
pub(crate) fn build_rows<F>(n_rows: usize, n_cols: usize, parallel: bool, f: F) -> Vec<TruthValue>
where
    F: Fn(usize) -> Vec<TruthValue> + Sync,
{
    let out = if use_parallel(parallel, n_rows * n_cols) {
        collect_parallel(n_rows, &f)
    } else {
        (0..n_rows).map(&f).collect::<Vec<_>>().concat()
    };
    debug_assert_eq!(out.len(), n_rows * n_cols);
    out
}

#[cfg(feature = "parallel")]
fn use_parallel(requested: bool, cells: usize) -> bool {
    requested && cells >= PAR_MIN_CELLS
}

#[cfg(feature = "parallel")]
fn collect_parallel<F>(n_rows: usize, f: &F) -> Vec<TruthValue>
where
    F: Fn(usize) -> Vec<TruthValue> + Sync,
{
    use rayon::prelude::*;
    (0..n_rows)
        .into_par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .concat()
}

#[cfg(not(feature = "parallel"))]
fn use_parallel(_requested: bool, _cells: usize) -> bool {
    false
}

#[cfg(not(feature = "parallel"))]
fn collect_parallel<F>(_n_rows: usize, _f: &F) -> Vec<TruthValue>
where
    F: Fn(usize) -> Vec<TruthValue> + Sync,
{
    unreachable!("parallel path selected without the parallel feature")
}
