//! Execution schedules for pairs of concurrent searches.

use std::sync::atomic::{AtomicBool, Ordering};

/// How two cooperating searches are driven.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// One OS thread per search.
    RealThreads,
    /// A single thread alternating `k` steps of each search. Reproducible.
    Lockstep(u32),
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::Lockstep(1)
    }
}

/// Runs two step functions until both report completion or `stop` is set.
/// A step function returns `false` once its search has finished.
pub fn run_pair<A, B>(schedule: Schedule, stop: &AtomicBool, mut a: A, mut b: B)
where
    A: FnMut() -> bool + Send,
    B: FnMut() -> bool + Send,
{
    match schedule {
        Schedule::Lockstep(k) => {
            let k = k.max(1);
            let (mut a_alive, mut b_alive) = (true, true);
            while (a_alive || b_alive) && !stop.load(Ordering::Acquire) {
                for _ in 0..k {
                    if !a_alive || stop.load(Ordering::Acquire) {
                        break;
                    }
                    a_alive = a();
                }
                for _ in 0..k {
                    if !b_alive || stop.load(Ordering::Acquire) {
                        break;
                    }
                    b_alive = b();
                }
            }
        }
        Schedule::RealThreads => {
            std::thread::scope(|s| {
                s.spawn(|| while !stop.load(Ordering::Acquire) && a() {});
                s.spawn(|| while !stop.load(Ordering::Acquire) && b() {});
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lockstep_alternates() {
        let stop = AtomicBool::new(false);
        let log = std::sync::Mutex::new(Vec::new());
        let (mut na, mut nb) = (0, 0);
        run_pair(
            Schedule::Lockstep(2),
            &stop,
            || {
                na += 1;
                log.lock().unwrap().push('a');
                na < 3
            },
            || {
                nb += 1;
                log.lock().unwrap().push('b');
                nb < 2
            },
        );
        assert_eq!(log.into_inner().unwrap().iter().collect::<String>(), "aabba");
    }

    #[test]
    fn threads_run_to_completion() {
        let stop = AtomicBool::new(false);
        let (mut na, mut nb) = (0, 0);
        run_pair(Schedule::RealThreads, &stop, || {
            na += 1;
            na < 100
        }, || {
            nb += 1;
            nb < 50
        });
        assert_eq!((na, nb), (100, 50));
    }
}
