//! Indicator sequences, the odds threshold and the exact win probability.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::summation::{compensated_sum, NeumaierSum};

/// Suffix sums within this distance of 1 raise [`ThresholdResult::boundary_flag`].
pub const BOUNDARY_EPS: f64 = 1e-9;

/// Products of failure probabilities below this switch the expanded win
/// probability to the log domain.
pub const MIN_DIRECT_PRODUCT: f64 = 1e-300;

/// Success probabilities `p_1..p_n` of independent indicators together with
/// their odds `r_j = p_j / (1 - p_j)` and suffix sums `R_l = r_l + ... + r_n`.
///
/// Odds and suffix sums are extended reals: `p_j = 1` gives `r_j = +inf`,
/// and every `R_l` with `l <= j` is then `+inf` as well.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OddsSequence {
    p: Vec<f64>,
    #[serde(serialize_with = "crate::ext_real::serialize_vec")]
    odds: Vec<f64>,
    #[serde(
        rename = "suffix_sums",
        serialize_with = "crate::ext_real::serialize_vec"
    )]
    suffix: Vec<f64>,
}

impl OddsSequence {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (i, &x) in p.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NotANumber { index: i + 1 });
            }
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::OutOfRange {
                    index: i + 1,
                    value: x,
                });
            }
        }
        let odds: Vec<f64> = p.iter().map(|&x| odds_of(x)).collect();

        let mut suffix = vec![0.0; p.len()];
        let mut acc = NeumaierSum::new();
        for (slot, &r) in suffix.iter_mut().zip(&odds).rev() {
            acc += r;
            *slot = acc.value();
        }
        Ok(Self { p, odds, suffix })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    /// Always false: a validated sequence has at least one item.
    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn odds(&self) -> &[f64] {
        &self.odds
    }

    /// `R_1..R_n`, stored 0-based.
    pub fn suffix_sums(&self) -> &[f64] {
        &self.suffix
    }

    /// `R_l` for 1-based `l`; `R_{n+1} = 0`.
    pub fn suffix_sum(&self, l: usize) -> f64 {
        assert!(
            l >= 1 && l <= self.len() + 1,
            "suffix index {l} out of range"
        );
        self.suffix.get(l - 1).copied().unwrap_or(0.0)
    }

    pub fn threshold(&self) -> ThresholdResult {
        threshold(self)
    }

    pub fn win_probability(&self) -> WinProbability {
        win_probability(self, &self.threshold())
    }
}

fn odds_of(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else {
        p / (1.0 - p)
    }
}

/// Checks `p` and materializes odds and suffix sums.
pub fn validate_probabilities(p: &[f64]) -> Result<OddsSequence> {
    OddsSequence::new(p.to_vec())
}

/// The optimal threshold `s = max{1, max{l : R_l >= 1}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdResult {
    /// 1-based threshold index.
    pub s: usize,
    #[serde(serialize_with = "crate::ext_real::serialize")]
    pub r_s: f64,
    /// Some finite `R_l` lies within [`BOUNDARY_EPS`] of 1, so the
    /// threshold decision is sensitive to rounding.
    pub boundary_flag: bool,
}

/// Computes the threshold with an exact `R_l >= 1` comparison.
pub fn threshold(seq: &OddsSequence) -> ThresholdResult {
    let suffix = seq.suffix_sums();
    let s = suffix.iter().rposition(|&r| r >= 1.0).map_or(1, |i| i + 1);
    let boundary_flag = suffix
        .iter()
        .any(|&r| r.is_finite() && (r - 1.0).abs() < BOUNDARY_EPS);
    ThresholdResult {
        s,
        r_s: suffix[s - 1],
        boundary_flag,
    }
}

/// Success probability of the odds rule, computed three ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WinProbability {
    /// Expanded form `sum_l p_l * prod_{j != l} q_j` over `[s, n]`.
    pub value: f64,
    /// `prod q_j * R_s`; absent when some `p_j = 1` on `[s, n]`.
    pub odds_form: Option<f64>,
    /// `R_s / prod (1 + r_j)`; absent when some `p_j = 1` on `[s, n]`.
    pub product_form: Option<f64>,
}

/// Evaluates the win probability of stopping at the first success at or after `t.s`.
pub fn win_probability(seq: &OddsSequence, t: &ThresholdResult) -> WinProbability {
    let from = t.s - 1;
    let p = &seq.probabilities()[from..];
    let odds = &seq.odds()[from..];
    let value = expanded_sum(p, false).clamp(0.0, 1.0);

    let (odds_form, product_form) = if odds.iter().all(|r| r.is_finite()) {
        let r_s = seq.suffix_sums()[from];
        let q_prod: f64 = p.iter().map(|&x| 1.0 - x).product();
        let one_plus: f64 = odds.iter().map(|&r| 1.0 + r).product();
        (Some(q_prod * r_s), Some(r_s / one_plus))
    } else {
        (None, None)
    };
    WinProbability {
        value,
        odds_form,
        product_form,
    }
}

/// `sum_l p_l * prod_{j != l} (1 - p_j)` over the whole slice.
///
/// Uses prefix and suffix products of the `q_j`, which handles `q_j = 0`
/// without division. Falls back to log-domain terms when any intermediate
/// product drops below [`MIN_DIRECT_PRODUCT`], or when `force_log` is set.
pub(crate) fn expanded_sum(p: &[f64], force_log: bool) -> f64 {
    let n = p.len();
    let mut prefix = vec![1.0; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] * (1.0 - p[i]);
    }
    let mut suffix = vec![1.0; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] * (1.0 - p[i]);
    }
    let underflow = prefix
        .iter()
        .chain(&suffix)
        .any(|&x| x > 0.0 && x < MIN_DIRECT_PRODUCT);
    if force_log || underflow {
        return expanded_sum_log(p);
    }
    compensated_sum((0..n).map(|l| p[l] * prefix[l] * suffix[l + 1]))
}

fn expanded_sum_log(p: &[f64]) -> f64 {
    let zeros = p.iter().filter(|&&x| x == 1.0).count();
    let log_q: f64 = compensated_sum(p.iter().filter(|&&x| x < 1.0).map(|&x| (-x).ln_1p()));
    compensated_sum(p.iter().map(|&x| {
        if x == 0.0 {
            return 0.0;
        }
        let own_zero = usize::from(x == 1.0);
        if zeros > own_zero {
            return 0.0;
        }
        let others = if x < 1.0 { log_q - (-x).ln_1p() } else { log_q };
        (x.ln() + others).exp()
    }))
}

/// Records of a uniformly random permutation: `p_j = 1/j`.
pub fn secretary_sequence(n: usize) -> Result<OddsSequence> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    OddsSequence::new((1..=n).map(|j| 1.0 / j as f64).collect())
}

/// Lindley's cutoff for the classical secretary problem: the `k` with
/// `a_{k-1} >= 1 > a_k`, where `a_k = 1/k + ... + 1/(n-1)` (empty sums are 0).
///
/// Evaluated from harmonic tail sums directly, so it serves as a cross-check
/// for [`threshold`] on [`secretary_sequence`].
pub fn lindley_threshold(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    // a_k for k = n-1 down to 1; a_n = 0 < 1 always.
    let mut tail = 0.0;
    for k in (1..n).rev() {
        tail += 1.0 / k as f64;
        if tail >= 1.0 {
            return Ok(k + 1);
        }
    }
    Ok(1)
}
