//! Data-parallel map helper. Every result is a pure function of its index,
//! so the parallel and sequential paths produce bitwise-identical output.

/// Maps `f` over `0..n`, in parallel when `parallel` is true and the
/// `parallel` feature is enabled, sequentially otherwise.
pub fn map_indexed<T, F>(parallel: bool, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// True when the crate was built with the rayon backend.
pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
