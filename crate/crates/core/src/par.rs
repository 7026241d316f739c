//! Index-range map/reduce with an optional rayon backend.
//!
//! Reductions pick the extreme value and break ties toward the lowest index,
//! which is associative and commutative, so results do not depend on how the
//! range was split across threads.

use std::cmp::Ordering;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How an index-range loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exec {
    pub parallel: bool,
    pub min_chunk: usize,
}

impl Exec {
    pub const SEQUENTIAL: Exec = Exec {
        parallel: false,
        min_chunk: 1,
    };

    #[cfg(feature = "parallel")]
    fn use_threads(&self) -> bool {
        self.parallel
    }
}

/// Ordered `(0..n).map(f).collect()`.
pub fn map_range<T, F>(n: usize, exec: Exec, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.use_threads() {
        return (0..n)
            .into_par_iter()
            .with_min_len(exec.min_chunk.max(1))
            .map(f)
            .collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

fn better_max(a: (usize, f64), b: (usize, f64)) -> (usize, f64) {
    match a.1.total_cmp(&b.1) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if a.0 <= b.0 {
                a
            } else {
                b
            }
        }
    }
}

fn better_min(a: (usize, f64), b: (usize, f64)) -> (usize, f64) {
    match a.1.total_cmp(&b.1) {
        Ordering::Less => a,
        Ordering::Greater => b,
        Ordering::Equal => {
            if a.0 <= b.0 {
                a
            } else {
                b
            }
        }
    }
}

fn reduce_range<F, R>(n: usize, exec: Exec, f: F, pick: R) -> Option<(usize, f64)>
where
    F: Fn(usize) -> Option<f64> + Sync + Send,
    R: Fn((usize, f64), (usize, f64)) -> (usize, f64) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.use_threads() {
        return (0..n)
            .into_par_iter()
            .with_min_len(exec.min_chunk.max(1))
            .filter_map(|i| f(i).map(|v| (i, v)))
            .reduce_with(&pick);
    }
    let _ = exec;
    (0..n).filter_map(|i| f(i).map(|v| (i, v))).reduce(pick)
}

/// Index and value of the largest `Some` value; `None` if every index is
/// filtered out.
pub fn argmax<F>(n: usize, exec: Exec, f: F) -> Option<(usize, f64)>
where
    F: Fn(usize) -> Option<f64> + Sync + Send,
{
    reduce_range(n, exec, f, better_max)
}

pub fn argmin<F>(n: usize, exec: Exec, f: F) -> Option<(usize, f64)>
where
    F: Fn(usize) -> Option<f64> + Sync + Send,
{
    reduce_range(n, exec, f, better_min)
}
