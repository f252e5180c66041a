//! Command implementations behind the `fuzzcount` binary, split out as a
//! library so integration tests can drive them without spawning processes.

mod cache;
mod corpus;
mod count;
mod table;
mod verify;

pub use cache::{Cache, CacheEntry};
pub use corpus::{preset, PAPER_TABLES_EXTRA, SMOKE};
pub use count::{render_count_text, run_count, CountReport, FamilyLine, MethodChoice};
pub use table::{render_table_csv, run_table, TableOptions, TableOut, TableRow};
pub use verify::{
    render_verify_text, run_verify, verify_specs, CheckOut, FixtureOut, Summary, VerifyEntry,
    VerifyOptions, VerifyReport,
};

use fuzzcount_core::formulas::{D2nC8Reading, EvalOptions};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] fuzzcount_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cache file: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache file: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 3 signals a bug in the engine (method disagreement, broken invariant);
    /// 1 is an input or environment problem. Findings about the printed
    /// formulas are report content, not errors, and exit 0.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if e.is_internal() => 3,
            _ => 1,
        }
    }
}

/// Parses the `--interpretation` flag. The only defined key is `d2n_c8`,
/// whose only defined reading is `j_minus_1`.
pub fn parse_interpretation(s: &str) -> Result<EvalOptions, String> {
    match s {
        "d2n_c8=j_minus_1" => Ok(EvalOptions {
            d2n_c8: Some(D2nC8Reading::JMinus1),
        }),
        other => Err(format!(
            "unknown interpretation '{other}' (supported: d2n_c8=j_minus_1)"
        )),
    }
}

/// Parses an inclusive integer range: "3..10", "3..=10" or a bare "4".
pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let parse_end = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("'{t}' is not an integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (parse_end(a)?, parse_end(b)?)
        }
        None => {
            let v = parse_end(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}
