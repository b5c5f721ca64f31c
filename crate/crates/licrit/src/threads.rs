//! Scoped worker threads for the core's [`Parallel`] hook.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use licrit_core::par::Parallel;

/// Runs jobs on up to `workers` threads. Jobs are claimed dynamically but the
/// results come back in index order, so output never depends on scheduling.
#[derive(Clone, Copy, Debug)]
pub struct Threads {
    workers: usize,
}

impl Threads {
    pub fn new(workers: usize) -> Self {
        Threads { workers: workers.max(1) }
    }

    /// One worker per available core.
    pub fn available() -> Self {
        Threads::new(std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

impl Parallel for Threads {
    fn map<T: Send>(&self, jobs: usize, f: &(dyn Fn(usize) -> T + Sync)) -> Vec<T> {
        let workers = self.workers.min(jobs);
        if workers <= 1 {
            return (0..jobs).map(f).collect();
        }
        let next = AtomicUsize::new(0);
        let done: Mutex<Vec<(usize, T)>> = Mutex::new(Vec::with_capacity(jobs));
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= jobs {
                            break;
                        }
                        local.push((i, f(i)));
                    }
                    done.lock().expect("worker panicked").extend(local);
                });
            }
        });
        let mut out = done.into_inner().expect("worker panicked");
        out.sort_unstable_by_key(|e| e.0);
        out.into_iter().map(|e| e.1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use licrit_core::par::Serial;

    #[test]
    fn matches_serial_order() {
        let f = |i: usize| (i * i) as u64 % 97;
        for w in [1, 2, 3, 8] {
            assert_eq!(Threads::new(w).map(50, &f), Serial.map(50, &f));
        }
        assert!(Threads::new(4).map(0, &f).is_empty());
        assert_eq!(Threads::new(0).workers(), 1);
    }
}
