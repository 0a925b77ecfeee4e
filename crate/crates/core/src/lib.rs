//! Optimal stopping on independent indicators by the odds algorithm.
//!
//! Given success probabilities `p_1..p_n`, the odds rule sums the odds
//! `r_j = p_j / (1 - p_j)` from the end, finds the threshold `s` where the
//! sum first reaches 1, and stops at the first success from `s` on. This
//! crate computes `s` and the rule's exact win probability `V_n`, bounds
//! `V_n` from above and below in terms of `n`, `s` and `R_s`, generates
//! sequences that attain those bounds, and ships independent oracles
//! (dynamic programming, enumeration, Monte Carlo) to check all of it.
//!
//! ```
//! use oddstop::{bound_report, secretary_sequence};
//!
//! let seq = secretary_sequence(10).unwrap();
//! let t = seq.threshold();
//! assert_eq!(t.s, 4);
//! let report = bound_report(&seq).unwrap();
//! assert!(report.lower.value <= report.v_n && report.v_n <= report.upper);
//! ```

pub mod bounds;
pub mod error;
pub mod ext_real;
pub mod extremal;
pub mod odds;
pub mod oracle;
pub mod summation;

pub use bounds::{
    bound_report, corollary_bound, inverse_power, lemma1_gap, lower_bound, prior_bounds,
    upper_bound, upper_bound_value, BoundCheck, BoundId, BoundReport, LowerBound, LowerCase,
    PriorBounds, EQUALITY_TOL,
};
pub use error::{Error, Result};
pub use extremal::{
    equal_odds, lower_extremal_case1, lower_extremal_case2, lower_near_extremal_case3,
    upper_extremal, Attainment, ExtremalConfig, ExtremalParams, Family, DEFAULT_ALPHA,
};
pub use odds::{
    lindley_threshold, secretary_sequence, threshold, validate_probabilities, win_probability,
    OddsSequence, ThresholdResult, WinProbability,
};
pub use oracle::{
    dp_optimal_value, exhaustive_value, monte_carlo, threshold_rule_value, DpResult,
    SimulationReport, EXHAUSTIVE_MAX_N,
};
