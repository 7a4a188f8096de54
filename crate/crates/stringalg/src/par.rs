//! Data-parallel helpers with a sequential fallback.
//!
//! The `parallel` cargo feature (on by default) compiles the rayon-backed
//! paths; without it every helper degrades to a plain iterator.  Callers
//! additionally pass a runtime switch so batch operations can be compared
//! against their sequential counterparts (see the `batch` bench) and so the
//! CLI `--parallel` flag has something to toggle.  Results preserve input
//! order either way, keeping all batch output deterministic.

/// Maps `f` over `items`, in parallel when the feature is compiled in and
/// `parallel` is true.  Output order matches input order.
#[cfg(feature = "parallel")]
pub fn map_batch<T, U, F>(items: &[T], parallel: bool, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn map_batch<T, U, F>(items: &[T], _parallel: bool, f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
