//! Resolution of the probability sequence a command operates on.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use oddstop::{
    lower_extremal_case1, lower_extremal_case2, lower_near_extremal_case3, secretary_sequence,
    upper_extremal, validate_probabilities, ExtremalConfig, Family, OddsSequence, DEFAULT_ALPHA,
};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Upper,
    Case1,
    Case2,
    Case3,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Upper => Family::Upper,
            FamilyArg::Case1 => Family::Case1,
            FamilyArg::Case2 => Family::Case2,
            FamilyArg::Case3 => Family::Case3,
        }
    }
}

/// Parameters of an extremal family.
#[derive(Debug, Clone, Args)]
pub struct FamilyParams {
    /// Number of items.
    #[arg(long)]
    pub n: Option<usize>,
    /// Threshold index (1-based).
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Suffix odds sum at the threshold (upper, case1).
    #[arg(long = "rs")]
    pub r_s: Option<f64>,
    /// Family parameter in (0, 1) for case3.
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct InputArgs {
    /// Comma-separated probabilities, e.g. "0,0,0.5,0,0".
    #[arg(group = "source", allow_hyphen_values = true)]
    pub probs: Option<String>,
    /// File with one probability per line, or a JSON object {"p": [...]}.
    #[arg(long, group = "source")]
    pub file: Option<PathBuf>,
    /// Built-in secretary sequence p_j = 1/j of length N.
    #[arg(long, value_name = "N", group = "source")]
    pub secretary: Option<usize>,
    /// Built-in extremal family (parameters via --n/--s/--rs/--alpha).
    #[arg(long, group = "source")]
    pub family: Option<FamilyArg>,
    #[command(flatten)]
    pub params: FamilyParams,
}

impl InputArgs {
    pub fn resolve(&self) -> Result<OddsSequence, CliError> {
        if let Some(list) = &self.probs {
            return Ok(validate_probabilities(&parse_list(list)?)?);
        }
        if let Some(path) = &self.file {
            return Ok(validate_probabilities(&read_file(path)?)?);
        }
        if let Some(n) = self.secretary {
            return Ok(secretary_sequence(n)?);
        }
        if let Some(family) = self.family {
            return Ok(generate(family, &self.params)?.seq);
        }
        Err(CliError::Input("no input given".into()))
    }
}

pub fn generate(family: FamilyArg, params: &FamilyParams) -> Result<ExtremalConfig, CliError> {
    let n = params
        .n
        .ok_or_else(|| CliError::Input("--n is required for extremal families".into()))?;
    let r_s = |name: &str| {
        params
            .r_s
            .ok_or_else(|| CliError::Input(format!("--rs is required for family {name}")))
    };
    let config = match family {
        FamilyArg::Upper => upper_extremal(n, params.s, r_s("upper")?)?,
        FamilyArg::Case1 => lower_extremal_case1(n, r_s("case1")?)?,
        FamilyArg::Case2 => lower_extremal_case2(n, params.s)?,
        FamilyArg::Case3 => lower_near_extremal_case3(n, params.s, params.alpha)?,
    };
    Ok(config)
}

pub fn parse_list(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .enumerate()
        .map(|(i, tok)| parse_item(tok.trim(), i + 1))
        .collect()
}

fn parse_item(tok: &str, index: usize) -> Result<f64, CliError> {
    tok.parse::<f64>().map_err(|_| {
        CliError::Input(format!(
            "cannot parse {tok:?} as a probability (item {index})"
        ))
    })
}

#[derive(Deserialize)]
struct JsonInput {
    p: Vec<f64>,
}

pub fn read_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn parse_document(text: &str) -> Result<Vec<f64>, CliError> {
    if text.trim_start().starts_with('{') {
        let doc: JsonInput = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("invalid JSON input: {e}")))?;
        return Ok(doc.p);
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| parse_item(l, i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_lists() {
        assert_eq!(
            parse_list("0, 0,0.5 ,0,0").unwrap(),
            vec![0.0, 0.0, 0.5, 0.0, 0.0]
        );
        assert_eq!(parse_list("1e-3").unwrap(), vec![0.001]);
        assert!(matches!(parse_list("0.1,,0.2"), Err(CliError::Input(_))));
        assert!(matches!(parse_list("abc"), Err(CliError::Input(_))));
    }

    #[test]
    fn file_formats() {
        assert_eq!(
            parse_document("0.1\n\n0.2\n0.3\n").unwrap(),
            vec![0.1, 0.2, 0.3]
        );
        assert_eq!(
            parse_document(r#"{"p": [0.25, 0.5], "target_bound": 1}"#).unwrap(),
            vec![0.25, 0.5]
        );
        assert!(matches!(
            parse_document(r#"{"q": [1]}"#),
            Err(CliError::Input(_))
        ));
        assert!(parse_document("").unwrap().is_empty());
    }
}
