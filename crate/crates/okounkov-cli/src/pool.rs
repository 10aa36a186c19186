//! A minimal worker pool with deterministic ordered collection. The worker
//! count comes from the `OKOUNKOV_THREADS` environment variable (default 1).

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub fn worker_count() -> usize {
    std::env::var("OKOUNKOV_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Runs `f(0..jobs)` across the configured workers and returns the results
/// in job order regardless of completion order.
pub fn run_ordered<T, F>(jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = worker_count().min(jobs.max(1));
    if workers <= 1 {
        return (0..jobs).map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= jobs {
                    break;
                }
                let out = f(i);
                results.lock().unwrap()[i] = Some(out);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("worker completed"))
        .collect()
}
