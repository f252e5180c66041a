use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fuzzcount::{
    parse_interpretation, parse_range, preset, render_count_text, render_table_csv,
    render_verify_text, run_count, run_table, run_verify, CliError, MethodChoice, TableOptions,
    VerifyOptions,
};
use fuzzcount_core::formulas::{list_families, EvalOptions, FamilyId};
use fuzzcount_core::{enumerate_subgroups, realize_spec, Limits};

/// Exact fuzzy subgroup counts (equivalently: chains in the subgroup lattice)
/// for small finite groups, with the published closed forms cross-checked
/// against a brute-force lattice oracle.
#[derive(Parser)]
#[command(name = "fuzzcount", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Chain counts by dynamic programming over the lattice.
    Dp,
    /// Chain counts by inclusion-exclusion over maximal subgroups.
    Ie,
    /// Both counters, compared; disagreement is a hard error.
    Both,
    /// Printed closed forms only (the spec must match a known family).
    Formula,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute h(G) for one group spec, e.g. "C4 x C8" or "D16 x C2".
    Count {
        spec: String,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        /// Largest group order to build a lattice for.
        #[arg(long, default_value_t = 256)]
        max_order: usize,
        /// Reading for a garbled printed expression, e.g. d2n_c8=j_minus_1.
        #[arg(long)]
        interpretation: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one formula family over a parameter range.
    Table {
        /// Family name, e.g. CYCLIC, RANK2, Z4_CHAIN, D8_C2M. Case and
        /// separators are forgiving (d8c2m works).
        family: String,
        /// Inclusive range: "3..10", "3..=10" or a single value "4".
        range: String,
        /// Prime parameter, required by CYCLIC, RANK2, RANK3 and RANK3_REC.
        #[arg(long)]
        p: Option<u64>,
        /// Also compute the exact lattice count for each row's group.
        #[arg(long)]
        with_oracle: bool,
        #[arg(long, default_value_t = 256)]
        max_order: usize,
        #[arg(long)]
        interpretation: Option<String>,
        /// JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Cross-check formulas, printed tables and the lattice oracle over a
    /// corpus of groups. Mismatches are findings and exit 0.
    Verify {
        /// Group specs; defaults to the named preset when empty.
        specs: Vec<String>,
        /// Corpus preset: "smoke" (orders <= 64) or "paper-tables" (<= 256).
        #[arg(long, default_value = "smoke")]
        preset: String,
        /// Groups above this order skip the oracle but keep formula checks.
        #[arg(long, default_value_t = 256)]
        max_order: usize,
        /// Cache file for computed counts (JSON, keyed by canonical spec).
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        interpretation: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Dump the subgroup lattice of one group as JSON.
    Lattice {
        spec: String,
        #[arg(long, default_value_t = 256)]
        max_order: usize,
    },
    /// List the known formula families.
    Families,
}

fn eval_options(interpretation: &Option<String>) -> Result<EvalOptions, CliError> {
    match interpretation {
        None => Ok(EvalOptions::default()),
        Some(s) => parse_interpretation(s).map_err(CliError::Usage),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Count {
            spec,
            method,
            max_order,
            interpretation,
            json,
        } => {
            let method = match method {
                MethodArg::Dp => MethodChoice::Dp,
                MethodArg::Ie => MethodChoice::Ie,
                MethodArg::Both => MethodChoice::Both,
                MethodArg::Formula => MethodChoice::Formula,
            };
            let report = run_count(&spec, method, max_order, &eval_options(&interpretation)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", render_count_text(&report));
            }
        }
        Cmd::Table {
            family,
            range,
            p,
            with_oracle,
            max_order,
            interpretation,
            json,
        } => {
            let id = FamilyId::parse(&family).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown family '{family}' (try the families subcommand)"
                ))
            })?;
            let (lo, hi) = parse_range(&range).map_err(CliError::Usage)?;
            let out = run_table(&TableOptions {
                family: id,
                p,
                lo,
                hi,
                with_oracle,
                max_order,
                opts: eval_options(&interpretation)?,
            })?;
            if json {
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                print!("{}", render_table_csv(&out));
            }
        }
        Cmd::Verify {
            specs,
            preset: preset_name,
            max_order,
            cache,
            interpretation,
            json,
        } => {
            let corpus = if specs.is_empty() {
                preset(&preset_name).ok_or_else(|| {
                    CliError::Usage(format!(
                        "unknown preset '{preset_name}' (smoke, paper-tables)"
                    ))
                })?
            } else {
                specs
            };
            let report = run_verify(&VerifyOptions {
                corpus,
                max_order,
                cache_path: cache,
                opts: eval_options(&interpretation)?,
            })?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", render_verify_text(&report));
            }
        }
        Cmd::Lattice { spec, max_order } => {
            let limits = Limits {
                max_order,
                ..Limits::default()
            };
            let g = realize_spec(&spec, &limits)?;
            let lattice = enumerate_subgroups(&g, &limits)?;
            println!("{}", serde_json::to_string_pretty(&lattice.dump())?);
        }
        Cmd::Families => {
            for f in list_families() {
                let garbled = if f.garbled { "  [garbled source]" } else { "" };
                println!("{:<10} {:<12} range {:<8} {}{}", f.name, f.params, f.range, f.describes, garbled);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
