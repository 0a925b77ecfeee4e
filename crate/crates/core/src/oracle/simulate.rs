use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::odds::OddsSequence;

/// Trials per independently seeded chunk.
pub const MC_CHUNK_TRIALS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationReport {
    pub k: usize,
    pub trials: u64,
    pub wins: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub seed: u64,
}

/// Seed for chunk `chunk` of a run seeded with `master`: the SplitMix64
/// finalizer applied to `master + (chunk + 1) * 0x9E3779B97F4A7C15`.
pub fn chunk_seed(master: u64, chunk: u64) -> u64 {
    let mut z = master.wrapping_add(chunk.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Simulates the threshold-`k` rule `trials` times.
///
/// Trials are split into chunks of [`MC_CHUNK_TRIALS`], each driven by its own
/// ChaCha8 stream seeded with [`chunk_seed`], so the report depends only on
/// `(seq, k, trials, seed)` and not on how many threads run the chunks.
/// Indicators before `k` never influence the outcome and are not drawn.
pub fn monte_carlo(
    seq: &OddsSequence,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<SimulationReport> {
    let p = seq.probabilities();
    if k == 0 || k > p.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            n: p.len(),
        });
    }
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let window = &p[k - 1..];
    let chunks = trials.div_ceil(MC_CHUNK_TRIALS);
    let wins: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = MC_CHUNK_TRIALS.min(trials - c * MC_CHUNK_TRIALS);
            let mut rng = ChaCha8Rng::seed_from_u64(chunk_seed(seed, c));
            (0..len).filter(|_| run_once(window, &mut rng)).count() as u64
        })
        .sum();
    let estimate = wins as f64 / trials as f64;
    Ok(SimulationReport {
        k,
        trials,
        wins,
        estimate,
        std_error: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        seed,
    })
}

/// One trial: stop on the first success, win iff no success follows.
fn run_once<R: Rng>(window: &[f64], rng: &mut R) -> bool {
    let mut stopped = false;
    for &pj in window {
        let success = rng.random::<f64>() < pj;
        if success {
            if stopped {
                return false;
            }
            stopped = true;
        }
    }
    stopped
}
