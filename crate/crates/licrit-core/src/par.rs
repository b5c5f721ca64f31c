//! Minimal execution abstraction so that std callers can supply threads.

use alloc::vec::Vec;

/// Runs `jobs` independent closures and returns their results in index order.
///
/// Implementations may run jobs concurrently but must return results in
/// order, which keeps every reduction built on top of them deterministic.
pub trait Parallel: Sync {
    fn map<T: Send>(&self, jobs: usize, f: &(dyn Fn(usize) -> T + Sync)) -> Vec<T>;
}

/// Runs every job on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Serial;

impl Parallel for Serial {
    fn map<T: Send>(&self, jobs: usize, f: &(dyn Fn(usize) -> T + Sync)) -> Vec<T> {
        (0..jobs).map(f).collect()
    }
}
