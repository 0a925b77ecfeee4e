//! Tabulation of bounds over a grid of `(n, s, R_s)`.

use std::io::Write;

use oddstop::{
    corollary_bound, lower_bound, lower_extremal_case1, lower_extremal_case2,
    lower_near_extremal_case3, upper_bound_value, Error, LowerCase,
};

use crate::CliError;

pub const HEADER: &str = "n,s,R_s,case,lower,upper,corollary,v_n";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub s: usize,
    pub r_s: f64,
    pub case: LowerCase,
    pub lower: f64,
    pub upper: f64,
    pub corollary: f64,
    /// `V_n` of the lower-bound family member with this `(n, s, R_s)`, when
    /// one exists.
    pub v_n: Option<f64>,
}

/// Parses `"a..b"` (inclusive), `"a"`, or `"a,b,c"`.
pub fn parse_range(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Input(format!("invalid integer range {text:?}"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim();
        let hi: usize = hi
            .strip_prefix('=')
            .unwrap_or(hi)
            .parse()
            .map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
                _ => Err(CliError::Input(format!("invalid R_s grid value {t:?}"))),
            }
        })
        .collect()
}

/// The member of the matching lower-bound family, if `R_s` lies on it:
/// case 1 for any `R_1` in (0, 1), case 2 only at `R_s = 1`, case 3 for
/// `alpha = 2 + 1/(n-s) - R_s` in (0, 1).
fn family_value(n: usize, s: usize, r_s: f64, case: LowerCase) -> Option<f64> {
    let config = match case {
        LowerCase::One => lower_extremal_case1(n, r_s).ok()?,
        LowerCase::Two if r_s == 1.0 => lower_extremal_case2(n, s).ok()?,
        LowerCase::Two => return None,
        LowerCase::Three => {
            let alpha = 2.0 + 1.0 / (n - s) as f64 - r_s;
            lower_near_extremal_case3(n, s, alpha).ok()?
        }
    };
    Some(config.seq.win_probability().value)
}

/// Builds all rows; inconsistent points are reported through `skipped`.
pub fn build_rows(
    ns: &[usize],
    ss: &[usize],
    grid: &[f64],
    mut skipped: impl FnMut(usize, usize, f64, &Error),
) -> Result<Vec<SweepRow>, CliError> {
    if ns.is_empty() || ss.is_empty() || grid.is_empty() {
        return Err(CliError::Input("empty sweep grid".into()));
    }
    if ns.contains(&0) || ss.contains(&0) {
        return Err(CliError::Input("n and s must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for &n in ns {
        for &s in ss.iter().filter(|&&s| s <= n) {
            for &r_s in grid {
                let lb = match lower_bound(n, s, r_s) {
                    Ok(lb) => lb,
                    Err(e) => {
                        skipped(n, s, r_s, &e);
                        continue;
                    }
                };
                rows.push(SweepRow {
                    n,
                    s,
                    r_s,
                    case: lb.case,
                    lower: lb.value,
                    upper: upper_bound_value(r_s),
                    corollary: corollary_bound(n, s),
                    v_n: family_value(n, s, r_s, lb.case),
                });
            }
        }
    }
    Ok(rows)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n,
            r.s,
            sig17(r.r_s),
            r.case.id(),
            sig17(r.lower),
            sig17(r.upper),
            sig17(r.corollary),
            r.v_n.map(sig17).unwrap_or_default()
        )?;
    }
    out.flush()
}
