//! Upper and lower bounds on the success probability of the odds rule.
//!
//! The upper bound `R_s / (1 + R_s)` and the three-case lower bound depend on
//! the horizon `n`, the threshold `s` and the suffix odds sum `R_s`. The
//! classical `n`-only bounds (`1/e` and `(1 - 1/(n+1))^n`) are reported next
//! to them for comparison.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::odds::OddsSequence;
use crate::summation::compensated_sum;

/// Absolute tolerance used to flag a bound as attained with equality.
pub const EQUALITY_TOL: f64 = 1e-12;

/// `(1 + 1/m)^{-m}`, evaluated as `exp(-m * ln_1p(1/m))`.
///
/// Decreasing in `m`, with limit `1/e` as `m -> inf`.
pub fn inverse_power(m: f64) -> f64 {
    if m.is_infinite() {
        return (-1.0f64).exp();
    }
    (-m * (1.0 / m).ln_1p()).exp()
}

/// `R_s / (1 + R_s)`; 1 when `R_s = +inf`.
pub fn upper_bound_value(r_s: f64) -> f64 {
    if r_s.is_infinite() {
        1.0
    } else {
        r_s / (1.0 + r_s)
    }
}

pub fn upper_bound(t: &crate::odds::ThresholdResult) -> f64 {
    upper_bound_value(t.r_s)
}

/// Which of the three lower-bound regimes applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "u8")]
pub enum LowerCase {
    /// `0 <= R_1 < 1`, `s = 1`.
    One,
    /// `1 <= R_s <= 1 + 1/(n-s)`.
    Two,
    /// `R_s > 1 + 1/(n-s)`; the bound is strict and not attained.
    Three,
}

impl LowerCase {
    pub fn id(self) -> u8 {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
        }
    }
}

impl From<LowerCase> for u8 {
    fn from(c: LowerCase) -> u8 {
        c.id()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBound {
    pub case: LowerCase,
    pub value: f64,
    pub strict: bool,
}

/// Dispatches on `R_s` and evaluates the matching lower bound.
///
/// The case-2 interval is closed. When `s = n`, `1/(n-s)` is `+inf` and case 2
/// covers every `R_s >= 1`.
pub fn lower_bound(n: usize, s: usize, r_s: f64) -> Result<LowerBound> {
    if n == 0 || s == 0 || s > n {
        return Err(Error::InconsistentInput(format!(
            "threshold {s} outside 1..={n}"
        )));
    }
    if r_s.is_nan() || r_s < 0.0 {
        return Err(Error::InconsistentInput(format!(
            "suffix odds sum {r_s} is not a nonnegative number"
        )));
    }
    if r_s < 1.0 {
        if s > 1 {
            return Err(Error::InconsistentInput(format!(
                "R_s = {r_s} < 1 is impossible for threshold s = {s} > 1"
            )));
        }
        let n = n as f64;
        let value = r_s * (-n * (r_s / n).ln_1p()).exp();
        return Ok(LowerBound {
            case: LowerCase::One,
            value,
            strict: false,
        });
    }
    let rest = n - s;
    let case2_upper = if rest == 0 {
        f64::INFINITY
    } else {
        1.0 + 1.0 / rest as f64
    };
    if r_s <= case2_upper {
        Ok(LowerBound {
            case: LowerCase::Two,
            value: inverse_power((rest + 1) as f64),
            strict: false,
        })
    } else {
        Ok(LowerBound {
            case: LowerCase::Three,
            value: inverse_power(rest as f64),
            strict: true,
        })
    }
}

/// `(1 + 1/(n-s+1))^{-(n-s+1)}`: the lower bound when only `n` and `s >= 2`
/// are known.
pub fn corollary_bound(n: usize, s: usize) -> f64 {
    assert!(s >= 1 && s <= n, "corollary bound needs 1 <= s <= n");
    inverse_power((n - s + 1) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PriorBounds {
    /// `R_1 >= 1`, the hypothesis of both classical bounds.
    pub e_applicable: bool,
    pub e_value: f64,
    /// `(1 - 1/(n+1))^n`.
    pub ai_value: f64,
}

pub fn prior_bounds(seq: &OddsSequence) -> PriorBounds {
    let n = seq.len() as f64;
    PriorBounds {
        e_applicable: seq.suffix_sum(1) >= 1.0,
        e_value: (-1.0f64).exp(),
        ai_value: (n * (-1.0 / (n + 1.0)).ln_1p()).exp(),
    }
}

/// `sum ln(1 + x_j) - ln(1 + sum x_j)`, which is nonnegative and vanishes
/// exactly when at most one coordinate is nonzero.
pub fn lemma1_gap(xs: &[f64]) -> Result<f64> {
    for (i, &x) in xs.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NotANumber { index: i + 1 });
        }
        if x < 0.0 {
            return Err(Error::NegativeInput {
                index: i + 1,
                value: x,
            });
        }
    }
    let logs = compensated_sum(xs.iter().map(|x| x.ln_1p()));
    let total = compensated_sum(xs.iter().copied());
    Ok(logs - total.ln_1p())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    Upper,
    Lower,
    Corollary,
    InverseE,
    AllaartIslas,
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Upper => "upper",
            Self::Lower => "lower",
            Self::Corollary => "corollary",
            Self::InverseE => "inverse_e",
            Self::AllaartIslas => "allaart_islas",
        })
    }
}

/// One bound compared against `V_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub bound: BoundId,
    pub value: f64,
    /// Whether the bound's hypothesis holds for this sequence.
    pub applicable: bool,
    /// Holds within [`EQUALITY_TOL`]; always true in a returned report for
    /// applicable bounds.
    pub satisfied: bool,
    /// `|V_n - value| <= EQUALITY_TOL`.
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub s: usize,
    #[serde(serialize_with = "crate::ext_real::serialize")]
    pub r_s: f64,
    pub v_n: f64,
    pub upper: f64,
    pub lower: LowerBound,
    /// `V_n > lower` in exact arithmetic of the computed values; the
    /// case-3 bound is strict.
    pub lower_strict_holds: bool,
    pub corollary: f64,
    /// The corollary's hypothesis `s >= 2`.
    pub corollary_applicable: bool,
    pub e_bound_applicable: bool,
    pub e_value: f64,
    pub allaart_islas: f64,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn check(&self, id: BoundId) -> &BoundCheck {
        self.checks
            .iter()
            .find(|c| c.bound == id)
            .expect("every bound id is reported")
    }
}

/// Evaluates `V_n` and every bound, failing with
/// [`Error::InternalBoundViolation`] if an applicable bound does not hold.
pub fn bound_report(seq: &OddsSequence) -> Result<BoundReport> {
    let n = seq.len();
    let t = seq.threshold();
    let v_n = seq.win_probability().value;
    let upper = upper_bound(&t);
    let lower = lower_bound(n, t.s, t.r_s)?;
    let corollary = corollary_bound(n, t.s);
    let prior = prior_bounds(seq);

    let below = |bound: f64| v_n <= bound + EQUALITY_TOL;
    let above = |bound: f64| v_n >= bound - EQUALITY_TOL;
    let equal = |bound: f64| (v_n - bound).abs() <= EQUALITY_TOL;

    let checks = vec![
        BoundCheck {
            bound: BoundId::Upper,
            value: upper,
            applicable: true,
            satisfied: below(upper),
            equality: equal(upper),
        },
        BoundCheck {
            bound: BoundId::Lower,
            value: lower.value,
            applicable: true,
            satisfied: above(lower.value),
            equality: equal(lower.value),
        },
        BoundCheck {
            bound: BoundId::Corollary,
            value: corollary,
            applicable: t.s >= 2,
            satisfied: above(corollary),
            equality: equal(corollary),
        },
        BoundCheck {
            bound: BoundId::InverseE,
            value: prior.e_value,
            applicable: prior.e_applicable,
            satisfied: above(prior.e_value),
            equality: equal(prior.e_value),
        },
        BoundCheck {
            bound: BoundId::AllaartIslas,
            value: prior.ai_value,
            applicable: prior.e_applicable,
            satisfied: above(prior.ai_value),
            equality: equal(prior.ai_value),
        },
    ];
    if let Some(bad) = checks.iter().find(|c| c.applicable && !c.satisfied) {
        return Err(Error::InternalBoundViolation {
            bound: bad.bound,
            bound_value: bad.value,
            v_n,
        });
    }

    Ok(BoundReport {
        n,
        s: t.s,
        r_s: t.r_s,
        v_n,
        upper,
        lower,
        lower_strict_holds: v_n > lower.value,
        corollary,
        corollary_applicable: t.s >= 2,
        e_bound_applicable: prior.e_applicable,
        e_value: prior.e_value,
        allaart_islas: prior.ai_value,
        checks,
    })
}
