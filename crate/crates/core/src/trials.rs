//! Reproducible Monte-Carlo trial loops.
//!
//! Trial `i` always runs with the generator `trial_rng(seed, i)`. With `W`
//! workers, worker `w` runs trials `w, w+W, w+2W, …`; the search reports the
//! successful trial with the smallest index, so the outcome (and the trial
//! count) is identical for every worker count.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of stream `stream` derived from a master seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    mix64(mix64(seed) ^ mix64(stream.wrapping_add(0x6a09_e667_f3bc_c909)))
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, trial))
}

#[derive(Debug, Clone)]
pub struct TrialSearch<T> {
    /// Winning trial index and its payload.
    pub found: Option<(u64, T)>,
    /// Trials up to and including the winner (or the cap on failure).
    pub trials: u64,
    /// Trials actually executed across all workers.
    pub executed: u64,
}

/// Runs `trial(index, rng)` for indices `0..max_trials` until one returns
/// `Some`.
pub fn search<T, F>(seed: u64, workers: usize, max_trials: u64, trial: F) -> TrialSearch<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> Option<T> + Sync,
{
    let workers = workers.max(1) as u64;
    if workers == 1 {
        for i in 0..max_trials {
            if let Some(v) = trial(i, &mut trial_rng(seed, i)) {
                return TrialSearch {
                    found: Some((i, v)),
                    trials: i + 1,
                    executed: i + 1,
                };
            }
        }
        return TrialSearch {
            found: None,
            trials: max_trials,
            executed: max_trials,
        };
    }

    let best = AtomicU64::new(u64::MAX);
    let executed = AtomicU64::new(0);
    let winner: Mutex<Option<(u64, T)>> = Mutex::new(None);
    std::thread::scope(|s| {
        for w in 0..workers {
            let (best, executed, winner, trial) = (&best, &executed, &winner, &trial);
            s.spawn(move || {
                let mut i = w;
                while i < max_trials && i < best.load(Ordering::Acquire) {
                    executed.fetch_add(1, Ordering::Relaxed);
                    if let Some(v) = trial(i, &mut trial_rng(seed, i)) {
                        let mut slot = winner.lock().expect("no worker panics while holding the lock");
                        if slot.as_ref().is_none_or(|(j, _)| i < *j) {
                            *slot = Some((i, v));
                            best.fetch_min(i, Ordering::AcqRel);
                        }
                        return;
                    }
                    i += workers;
                }
            });
        }
    });
    let found = winner.into_inner().expect("workers joined");
    let trials = found.as_ref().map_or(max_trials, |(i, _)| i + 1);
    TrialSearch {
        found,
        trials,
        executed: executed.into_inner(),
    }
}
