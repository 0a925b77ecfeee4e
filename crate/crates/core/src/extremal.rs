//! Probability sequences at which the success-probability bounds are
//! attained, or approached in the limit.
//!
//! Every generator sets `p_j = 0` before the requested threshold `s`.

use serde::Serialize;

use crate::bounds::{inverse_power, upper_bound_value};
use crate::error::{Error, Result};
use crate::odds::OddsSequence;

/// Used by the case-3 family when no `alpha` is given.
pub const DEFAULT_ALPHA: f64 = 1.0 - 1e-3;

/// Upper bound on single-ulp nudges applied to `p_s` so that the
/// floating-point `R_s` reaches 1 where the exact value is 1.
const MAX_NUDGES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attainment {
    Exact,
    Limiting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Upper,
    Case1,
    Case2,
    Case3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalParams {
    pub n: usize,
    pub s: usize,
    pub r_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalConfig {
    pub family: Family,
    pub seq: OddsSequence,
    pub target_bound: f64,
    pub attainment: Attainment,
    pub params: ExtremalParams,
}

fn check_indices(n: usize, s: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if s == 0 || s > n {
        return Err(Error::InconsistentInput(format!(
            "threshold {s} outside 1..={n}"
        )));
    }
    Ok(())
}

/// Builds the sequence and, if rounding left `R_s` just below its intended
/// value, raises `p_s` by single ulps until the threshold lands on `s` with
/// `R_s >= min_r_s`.
fn settle(mut p: Vec<f64>, s: usize, min_r_s: f64) -> Result<OddsSequence> {
    for _ in 0..MAX_NUDGES {
        let seq = OddsSequence::new(p.clone())?;
        let t = seq.threshold();
        if t.s == s && t.r_s >= min_r_s {
            return Ok(seq);
        }
        if t.s > s {
            break;
        }
        p[s - 1] = p[s - 1].next_up();
    }
    Err(Error::InconsistentInput(format!(
        "could not realize threshold {s} in floating point"
    )))
}

/// `p_s = R_s / (1 + R_s)` and zeros elsewhere: the only configuration
/// attaining `V_n = R_s / (1 + R_s)`.
pub fn upper_extremal(n: usize, s: usize, r_s: f64) -> Result<ExtremalConfig> {
    check_indices(n, s)?;
    if !(r_s.is_finite() && r_s > 0.0) {
        return Err(Error::InconsistentInput(format!(
            "R_s must be finite and positive, got {r_s}"
        )));
    }
    if s > 1 && r_s < 1.0 {
        return Err(Error::InconsistentInput(format!(
            "R_s = {r_s} < 1 cannot have threshold s = {s} > 1"
        )));
    }
    let mut p = vec![0.0; n];
    p[s - 1] = r_s / (1.0 + r_s);
    let seq = settle(p, s, r_s.min(1.0))?;
    Ok(ExtremalConfig {
        family: Family::Upper,
        seq,
        target_bound: upper_bound_value(r_s),
        attainment: Attainment::Exact,
        params: ExtremalParams {
            n,
            s,
            r_s,
            alpha: None,
        },
    })
}

/// Constant `p_j = R_1 / (n + R_1)`, attaining `R_1 (1 + R_1/n)^{-n}`.
pub fn lower_extremal_case1(n: usize, r_1: f64) -> Result<ExtremalConfig> {
    check_indices(n, 1)?;
    if !(r_1 > 0.0 && r_1 < 1.0) {
        return Err(Error::InconsistentInput(format!(
            "case 1 needs 0 < R_1 < 1, got {r_1}"
        )));
    }
    let nf = n as f64;
    let seq = OddsSequence::new(vec![r_1 / (nf + r_1); n])?;
    Ok(ExtremalConfig {
        family: Family::Case1,
        seq,
        target_bound: r_1 * (-nf * (r_1 / nf).ln_1p()).exp(),
        attainment: Attainment::Exact,
        params: ExtremalParams {
            n,
            s: 1,
            r_s: r_1,
            alpha: None,
        },
    })
}

/// `p_j = 1/(n-s+2)` on `[s, n]`, so `R_s = 1`, attaining
/// `(1 + 1/(n-s+1))^{-(n-s+1)}`.
pub fn lower_extremal_case2(n: usize, s: usize) -> Result<ExtremalConfig> {
    check_indices(n, s)?;
    let m = n - s + 1;
    let mut p = vec![0.0; n];
    for x in &mut p[s - 1..] {
        *x = 1.0 / (m + 1) as f64;
    }
    let seq = settle(p, s, 1.0)?;
    Ok(ExtremalConfig {
        family: Family::Case2,
        seq,
        target_bound: inverse_power(m as f64),
        attainment: Attainment::Exact,
        params: ExtremalParams {
            n,
            s,
            r_s: 1.0,
            alpha: None,
        },
    })
}

/// Odds `r_s = 2 - 2a + 1/(n-s)` and `r_j = a/(n-s)` after `s`.
///
/// `V_n` stays strictly above `(1 + 1/(n-s))^{-(n-s)}` and tends to it as
/// `alpha -> 1`.
pub fn lower_near_extremal_case3(n: usize, s: usize, alpha: f64) -> Result<ExtremalConfig> {
    check_indices(n, s)?;
    if s == n {
        return Err(Error::InconsistentInput("case 3 needs s < n".to_string()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InconsistentInput(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let m = (n - s) as f64;
    let mut p = vec![0.0; n];
    p[s - 1] = (1.0 + (2.0 - 2.0 * alpha) * m) / (1.0 + (3.0 - 2.0 * alpha) * m);
    for x in &mut p[s..] {
        *x = alpha / (m + alpha);
    }
    let seq = settle(p, s, 0.0)?;
    Ok(ExtremalConfig {
        family: Family::Case3,
        seq,
        target_bound: inverse_power(m),
        attainment: Attainment::Limiting,
        params: ExtremalParams {
            n,
            s,
            r_s: 2.0 - alpha + 1.0 / m,
            alpha: Some(alpha),
        },
    })
}

/// Equal odds `r_j = R_s/(n-s+1)` on `[s, n]`, zeros before.
///
/// No threshold adjustment is made: for `R_s > 1 + 1/(n-s)` the induced
/// `R_{s+1}` exceeds 1, so the realized threshold is past `s`.
pub fn equal_odds(n: usize, s: usize, r_s: f64) -> Result<OddsSequence> {
    check_indices(n, s)?;
    if !(r_s.is_finite() && r_s >= 0.0) {
        return Err(Error::InconsistentInput(format!(
            "R_s must be finite and nonnegative, got {r_s}"
        )));
    }
    let r = r_s / (n - s + 1) as f64;
    let mut p = vec![0.0; n];
    for x in &mut p[s - 1..] {
        *x = r / (1.0 + r);
    }
    OddsSequence::new(p)
}
