//! Order-preserving parallel map over sample points.

use rayon::prelude::*;

/// Applies `f` to every point, in parallel unless `threads == Some(1)`.
/// Results are returned in input order regardless of scheduling.
pub fn sweep<T, F>(points: &[[f64; 3]], threads: Option<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &[f64; 3]) -> T + Sync,
{
    let run = || points.par_iter().enumerate().map(|(i, p)| f(i, p)).collect();
    match threads {
        Some(1) => points.iter().enumerate().map(|(i, p)| f(i, p)).collect(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    }
}
