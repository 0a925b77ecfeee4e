mod input;
mod report;
mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use oddstop::{
    bound_report, dp_optimal_value, exhaustive_value, monte_carlo, secretary_sequence,
    threshold_rule_value, OddsSequence, EQUALITY_TOL, EXHAUSTIVE_MAX_N,
};
use thiserror::Error;

use input::{FamilyArg, FamilyParams, InputArgs};
use report::{Analysis, ExtremalOutput, Format, OracleCheck, OracleRow};

const DEFAULT_TRIALS: &str = "100000";
const MC_SIGMAS: f64 = 4.0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Verification(_) => 3,
        }
    }
}

impl From<oddstop::Error> for CliError {
    fn from(e: oddstop::Error) -> Self {
        match e {
            oddstop::Error::InternalBoundViolation { .. } => Self::Verification(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

/// Odds-algorithm optimal stopping: thresholds, win probabilities, sharp
/// bounds and verification oracles.
#[derive(Debug, Parser)]
#[command(name = "oddstop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Threshold, win probability and every bound for a sequence.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cross-check the win probability against DP, enumeration and simulation.
    OracleCheck {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, env = "ODDSTOP_TRIALS", default_value = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Tabulate bounds over a grid of (n, s, R_s) as CSV.
    Sweep {
        /// Horizon values: "a..b", "a" or "a,b,c".
        #[arg(long = "n")]
        n_range: String,
        /// Threshold values, same syntax; points with s > n are omitted.
        #[arg(long = "s")]
        s_range: String,
        /// Comma-separated R_s values.
        #[arg(long = "rs")]
        grid: String,
        /// Output path, or "-" for stdout.
        #[arg(long, short = 'o', default_value = "-")]
        out: PathBuf,
    },
    /// Generate a sequence attaining (or approaching) a bound.
    Extremal {
        #[arg(value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Monte Carlo estimate of a threshold rule's win probability.
    Simulate {
        #[command(flatten)]
        input: InputArgs,
        /// Rule threshold; defaults to the optimal s.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, env = "ODDSTOP_TRIALS", default_value = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Analyze the classical secretary sequence p_j = 1/j.
    Secretary {
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(cli.command, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))
}

fn run(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Analyze { input, format } => analyze(&input.resolve()?, format, out),
        Command::Secretary { n, format } => analyze(&secretary_sequence(n)?, format, out),
        Command::OracleCheck {
            input,
            trials,
            seed,
            format,
        } => oracle_check(&input.resolve()?, trials, seed, format, out),
        Command::Simulate {
            input,
            k,
            trials,
            seed,
            format,
        } => {
            let seq = input.resolve()?;
            let k = k.unwrap_or_else(|| seq.threshold().s);
            let exact = threshold_rule_value(&seq, k)?;
            let r = monte_carlo(&seq, k, trials, seed)?;
            match format {
                Format::Text => emit(out, &report::simulation_text(&r, exact)),
                Format::Json => emit(out, &report::to_json(&r)),
            }
        }
        Command::Extremal {
            family,
            params,
            format,
        } => {
            let config = input::generate(family, &params)?;
            let doc = ExtremalOutput::new(&config);
            match format {
                Format::Text => emit(out, &report::extremal_text(&doc)),
                Format::Json => emit(out, &report::to_json(&doc)),
            }
        }
        Command::Sweep {
            n_range,
            s_range,
            grid,
            out: path,
        } => {
            let rows = sweep::build_rows(
                &sweep::parse_range(&n_range)?,
                &sweep::parse_range(&s_range)?,
                &sweep::parse_grid(&grid)?,
                |n, s, r, e| eprintln!("skipping n={n} s={s} R_s={r}: {e}"),
            )?;
            let io_err =
                |e: io::Error| CliError::Input(format!("cannot write {}: {e}", path.display()));
            if path.as_os_str() == "-" {
                sweep::write_csv(&rows, out).map_err(io_err)
            } else {
                let file = File::create(&path).map_err(io_err)?;
                sweep::write_csv(&rows, BufWriter::new(file)).map_err(io_err)
            }
        }
    }
}

fn analyze(seq: &OddsSequence, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let bounds = bound_report(seq)?;
    let analysis = Analysis {
        n: seq.len(),
        seq,
        threshold: seq.threshold(),
        win_probability: seq.win_probability(),
        bounds: &bounds,
    };
    match format {
        Format::Text => emit(out, &report::analysis_text(&analysis)),
        Format::Json => emit(out, &report::to_json(&analysis)),
    }
}

fn exact_row(oracle: &'static str, value: f64, v_n: f64) -> OracleRow {
    let diff = (value - v_n).abs();
    OracleRow {
        oracle,
        value: Some(value),
        diff: Some(diff),
        tolerance: Some(EQUALITY_TOL),
        agrees: Some(diff <= EQUALITY_TOL),
        note: None,
    }
}

fn oracle_check(
    seq: &OddsSequence,
    trials: u64,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let s = seq.threshold().s;
    let v_n = seq.win_probability().value;
    let dp = dp_optimal_value(seq);

    let mut rows = vec![exact_row("dp_optimal", dp.value, v_n)];
    let rules: Vec<f64> = (1..=seq.len())
        .map(|k| threshold_rule_value(seq, k))
        .collect::<Result<_, _>>()?;
    rows.push(exact_row("threshold_rule(s)", rules[s - 1], v_n));
    let best = rules.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    rows.push(exact_row("max_k threshold_rule", best, v_n));
    if seq.len() <= EXHAUSTIVE_MAX_N {
        rows.push(exact_row("exhaustive(s)", exhaustive_value(seq, s)?, v_n));
    } else {
        rows.push(OracleRow {
            oracle: "exhaustive(s)",
            value: None,
            diff: None,
            tolerance: None,
            agrees: None,
            note: Some(format!(
                "skipped: n = {} exceeds {EXHAUSTIVE_MAX_N}",
                seq.len()
            )),
        });
    }
    let mc = monte_carlo(seq, s, trials, seed)?;
    let diff = (mc.estimate - v_n).abs();
    let tol = MC_SIGMAS * mc.std_error;
    rows.push(OracleRow {
        oracle: "monte_carlo(s)",
        value: Some(mc.estimate),
        diff: Some(diff),
        tolerance: Some(tol),
        agrees: Some(diff <= tol),
        note: None,
    });

    let all_agree = rows.iter().all(|r| r.agrees != Some(false));
    let check = OracleCheck {
        n: seq.len(),
        s,
        v_n,
        rows,
        dp,
        monte_carlo: mc,
        all_agree,
    };
    match format {
        Format::Text => emit(out, &report::oracle_text(&check))?,
        Format::Json => emit(out, &report::to_json(&check))?,
    }
    if all_agree {
        Ok(())
    } else {
        Err(CliError::Verification(
            "oracles disagree with the odds-rule win probability".into(),
        ))
    }
}
