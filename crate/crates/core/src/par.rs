//! Data-parallel building blocks. With the `parallel` feature (default) these
//! dispatch to rayon; without it they fall back to plain sequential loops, so
//! the library builds on targets where a thread pool is unwanted.
//!
//! Results are order-preserving in both modes, which keeps every report
//! byte-identical regardless of the feature choice.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Order-preserving map over a slice.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Order-preserving map over a slice.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// True when the predicate holds for every item.
#[cfg(feature = "parallel")]
pub fn all<T, F>(items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().all(f)
}

/// True when the predicate holds for every item.
#[cfg(not(feature = "parallel"))]
pub fn all<T, F>(items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.iter().all(f)
}
