//! Rendering of command results as text or JSON.

use std::fmt::Write as _;

use clap::ValueEnum;
use oddstop::{
    BoundReport, DpResult, ExtremalConfig, OddsSequence, SimulationReport, ThresholdResult,
    WinProbability,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Serialize)]
pub struct Analysis<'a> {
    pub n: usize,
    #[serde(flatten)]
    pub seq: &'a OddsSequence,
    pub threshold: ThresholdResult,
    pub win_probability: WinProbability,
    pub bounds: &'a BoundReport,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}

pub fn join(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

pub fn analysis_text(a: &Analysis) -> String {
    let mut out = String::new();
    let b = a.bounds;
    let t = &a.threshold;
    writeln!(out, "n            {}", a.n).unwrap();
    writeln!(out, "p            {}", join(a.seq.probabilities())).unwrap();
    writeln!(out, "odds         {}", join(a.seq.odds())).unwrap();
    writeln!(out, "suffix sums  {}", join(a.seq.suffix_sums())).unwrap();
    writeln!(out, "threshold    s = {}, R_s = {}", t.s, t.r_s).unwrap();
    if t.boundary_flag {
        writeln!(
            out,
            "warning      a suffix odds sum lies within 1e-9 of 1; s is rounding-sensitive"
        )
        .unwrap();
    }
    let w = &a.win_probability;
    writeln!(
        out,
        "V_n          {} (odds form {}, product form {})",
        w.value,
        opt(w.odds_form),
        opt(w.product_form)
    )
    .unwrap();
    writeln!(
        out,
        "lower case   {}{}",
        b.lower.case.id(),
        if b.lower.strict { " (strict)" } else { "" }
    )
    .unwrap();
    writeln!(out).unwrap();
    writeln!(
        out,
        "{:<14} {:<22} {:<10} {:<9} equality",
        "bound", "value", "applies", "holds"
    )
    .unwrap();
    for c in &b.checks {
        writeln!(
            out,
            "{:<14} {:<22} {:<10} {:<9} {}",
            c.bound.to_string(),
            c.value,
            c.applicable,
            c.satisfied,
            c.equality
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
pub struct OracleRow {
    pub oracle: &'static str,
    pub value: Option<f64>,
    pub diff: Option<f64>,
    pub tolerance: Option<f64>,
    pub agrees: Option<bool>,
    pub note: Option<String>,
}

#[derive(Serialize)]
pub struct OracleCheck {
    pub n: usize,
    pub s: usize,
    pub v_n: f64,
    pub rows: Vec<OracleRow>,
    pub dp: DpResult,
    pub monte_carlo: SimulationReport,
    pub all_agree: bool,
}

pub fn oracle_text(c: &OracleCheck) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}, s = {}, V_n = {}", c.n, c.s, c.v_n).unwrap();
    writeln!(
        out,
        "{:<22} {:<22} {:<12} {:<10} agrees",
        "oracle", "value", "|diff|", "tol"
    )
    .unwrap();
    for r in &c.rows {
        if let Some(note) = &r.note {
            writeln!(out, "{:<22} {note}", r.oracle).unwrap();
            continue;
        }
        writeln!(
            out,
            "{:<22} {:<22} {:<12.3e} {:<10.1e} {}",
            r.oracle,
            opt(r.value),
            r.diff.unwrap_or(f64::NAN),
            r.tolerance.unwrap_or(f64::NAN),
            r.agrees.map_or("-", |a| if a { "yes" } else { "NO" })
        )
        .unwrap();
    }
    writeln!(
        out,
        "{}",
        if c.all_agree {
            "all oracles agree"
        } else {
            "ORACLE DISAGREEMENT"
        }
    )
    .unwrap();
    out
}

pub fn simulation_text(r: &SimulationReport, exact: f64) -> String {
    format!(
        "k = {}, trials = {}, seed = {}\nwins = {}, estimate = {} +/- {} (exact {})\n",
        r.k, r.trials, r.seed, r.wins, r.estimate, r.std_error, exact
    )
}

#[derive(Serialize)]
pub struct ExtremalOutput<'a> {
    pub p: &'a [f64],
    pub family: oddstop::Family,
    pub target_bound: f64,
    pub v_n: f64,
    pub attainment: oddstop::Attainment,
    pub params: oddstop::ExtremalParams,
}

impl<'a> ExtremalOutput<'a> {
    pub fn new(c: &'a ExtremalConfig) -> Self {
        Self {
            p: c.seq.probabilities(),
            family: c.family,
            target_bound: c.target_bound,
            v_n: c.seq.win_probability().value,
            attainment: c.attainment,
            params: c.params,
        }
    }
}

pub fn extremal_text(e: &ExtremalOutput) -> String {
    format!(
        "{}\ntarget_bound = {}\nv_n = {}\nattainment = {}\n",
        join(e.p),
        e.target_bound,
        e.v_n,
        match e.attainment {
            oddstop::Attainment::Exact => "exact",
            oddstop::Attainment::Limiting => "limiting",
        }
    )
}
