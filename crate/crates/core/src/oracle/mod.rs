//! Verification engines that do not share code paths with [`crate::odds`].
//!
//! * [`dp_optimal_value`]: backward induction over all stopping rules.
//! * [`threshold_rule_value`]: direct product evaluation of one threshold rule.
//! * [`exhaustive_value`]: enumeration of every outcome vector.
//! * [`monte_carlo`]: seeded simulation.
//!
//! All of them read only the raw probabilities.

mod simulate;

use serde::Serialize;

pub use simulate::{chunk_seed, monte_carlo, SimulationReport, MC_CHUNK_TRIALS};

use crate::error::{Error, Result};
use crate::odds::OddsSequence;

/// Largest `n` accepted by [`exhaustive_value`].
pub const EXHAUSTIVE_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DpResult {
    /// Optimal win probability over all stopping times.
    pub value: f64,
    /// 1-based indices where a success should be accepted, sorted.
    pub stop_set: Vec<usize>,
    /// `V_1..V_{n+1}`, the value of continuing past index `k - 1`.
    pub continuation: Vec<f64>,
}

/// Exact backward induction for the last-success problem.
///
/// With `Q_k = prod_{j >= k} (1 - p_j)` (the chance of no later success),
///
/// ```text
/// V_{n+1} = 0
/// V_k     = p_k * max(Q_{k+1}, V_{k+1}) + (1 - p_k) * V_{k+1}
/// ```
///
/// Ties `Q_{k+1} = V_{k+1}` continue, so the stop set is
/// `{k : Q_{k+1} > V_{k+1}}`.
pub fn dp_optimal_value(seq: &OddsSequence) -> DpResult {
    let p = seq.probabilities();
    let n = p.len();
    let mut v = vec![0.0; n + 1];
    let mut q_next: f64 = 1.0;
    let mut stop_set = Vec::new();
    for k in (0..n).rev() {
        let stop_now = q_next;
        let keep_going = v[k + 1];
        if stop_now > keep_going {
            stop_set.push(k + 1);
        }
        v[k] = p[k] * stop_now.max(keep_going) + (1.0 - p[k]) * keep_going;
        q_next *= 1.0 - p[k];
    }
    stop_set.reverse();
    DpResult {
        value: v[0],
        stop_set,
        continuation: v,
    }
}

fn check_rule_index(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    Ok(())
}

/// Win probability of "stop at the first success at index `>= k`":
/// `sum_{l >= k} p_l * prod_{j in [k, n], j != l} (1 - p_j)`.
pub fn threshold_rule_value(seq: &OddsSequence, k: usize) -> Result<f64> {
    let p = seq.probabilities();
    check_rule_index(p.len(), k)?;
    let window = &p[k - 1..];
    let mut total = 0.0;
    for (l, &pl) in window.iter().enumerate() {
        let others: f64 = window
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != l)
            .map(|(_, &pj)| 1.0 - pj)
            .product();
        total += pl * others;
    }
    Ok(total)
}

/// Ground truth by summing over all `2^n` outcomes.
pub fn exhaustive_value(seq: &OddsSequence, k: usize) -> Result<f64> {
    let p = seq.probabilities();
    let n = p.len();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: EXHAUSTIVE_MAX_N,
        });
    }
    check_rule_index(n, k)?;
    let mut total = 0.0;
    for outcome in 0u32..(1u32 << n) {
        let success = |j: usize| outcome & (1 << j) != 0;
        let stop = (k - 1..n).find(|&j| success(j));
        let last = (0..n).rev().find(|&j| success(j));
        if stop.is_none() || stop != last {
            continue;
        }
        let weight: f64 = (0..n)
            .map(|j| if success(j) { p[j] } else { 1.0 - p[j] })
            .product();
        total += weight;
    }
    Ok(total)
}
