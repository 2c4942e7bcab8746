//! `dpx`: enumerate, construct, verify and cross-check exact products of two
//! odd-degree dihedral groups.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 resource budget exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dpx_core::classify::{classify, emit_report, ReportFormat, ReportOptions};
use dpx_core::group::{from_cayley_csv, to_cayley_csv, GroupError, DEFAULT_NODE_BUDGET};
use dpx_core::oracle::{cross_validate, OracleError, SweepConfig, DEFAULT_SEED_BUDGET};
use dpx_core::theorem::{
    admissible_tuples, check_conditions, construct_group, divisors, gap_script, relation_checks, stratum_counts, structural_checks,
    verify_cores, verify_exact_product, ExactProductGroup, ParameterTuple, TheoremError,
};

const SEED_BUDGET_VAR: &str = "DPX_SEED_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "dpx", version, about = "Exact products of two odd dihedral groups")]
struct Cli {
    /// Write machine output here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Degrees {
    /// Degree of K = D_2m (odd, >= 3).
    #[arg(short = 'm')]
    m: u64,
    /// Degree of H = D_2n (odd, >= 3).
    #[arg(short = 'n')]
    n: u64,
}

#[derive(Args, Debug, Clone)]
struct Search {
    /// Worker threads (default: available parallelism).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Maximum number of crossing seeds to sweep (default: $DPX_SEED_BUDGET or 2e8).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Node budget for each isomorphism search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    iso_budget: u64,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Emit {
    Cayley,
    Gap,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every admissible parameter tuple with stratum counts.
    Enumerate {
        #[command(flatten)]
        degrees: Degrees,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Build the group of one tuple.
    Construct {
        #[command(flatten)]
        degrees: Degrees,
        /// Tuple as `m1=1,n1=3,a=1,b=1,c=0,r=0,s=0,t=0`; omitted residues are 0.
        #[arg(long)]
        tuple: String,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Run the exact-product, core and structural checks on one tuple.
    Verify {
        #[command(flatten)]
        degrees: Degrees,
        #[arg(long)]
        tuple: String,
        /// Check a stored Cayley table (normal-form element order) instead of building one.
        #[arg(long)]
        from_cayley: Option<PathBuf>,
    },
    /// Sweep every crossing seed and print the sweep report.
    Oracle {
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        search: Search,
    },
    /// Sweep, match against the tuple enumeration, and report both directions.
    Crosscheck {
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        search: Search,
        /// Also write the full report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Classification report: strata, isomorphism and factorization classes.
    Classify {
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        search: Search,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        /// Attach the oracle cross-check.
        #[arg(long)]
        with_oracle: bool,
    },
}

enum Failure {
    Verification(String),
    Input(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(s) | Failure::Input(s) | Failure::Budget(s) => s,
        }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::ConstructionInconsistent(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::SearchBudgetExceeded(_) => Failure::Budget(e.to_string()),
            GroupError::Parse(_) => Failure::Input(e.to_string()),
            GroupError::NotAGroup(_) => Failure::Verification(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            OracleError::Input(inner) => inner.into(),
            OracleError::Search(inner) => inner.into(),
        }
    }
}

type Outcome = Result<String, (Option<String>, Failure)>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (output, failure) = match run(&cli.command) {
        Ok(out) => (Some(out), None),
        Err((out, failure)) => (out, Some(failure)),
    };
    if let Some(text) = output {
        match &cli.output {
            Some(path) => {
                if let Err(e) = fs::write(path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => print!("{text}"),
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn fail<E: Into<Failure>>(e: E) -> (Option<String>, Failure) {
    (None, e.into())
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Enumerate { degrees, format } => enumerate(*degrees, *format),
        Command::Construct { degrees, tuple, emit } => construct(*degrees, tuple, *emit),
        Command::Verify {
            degrees,
            tuple,
            from_cayley,
        } => verify(*degrees, tuple, from_cayley.as_ref()),
        Command::Oracle { degrees, search } => {
            let config = sweep_config(search).map_err(fail)?;
            eprintln!("sweeping (m, n) = ({}, {}) with {} workers", degrees.m, degrees.n, config.workers);
            let report = cross_validate(degrees.m, degrees.n, &config).map_err(fail)?;
            Ok(to_json(&report.sweep))
        }
        Command::Crosscheck { degrees, search, report } => {
            let config = sweep_config(search).map_err(fail)?;
            eprintln!("cross-checking (m, n) = ({}, {}) with {} workers", degrees.m, degrees.n, config.workers);
            let cross = cross_validate(degrees.m, degrees.n, &config).map_err(fail)?;
            let text = to_json(&cross);
            if let Some(path) = report {
                fs::write(path, &text)
                    .map_err(|e| fail(Failure::Input(format!("cannot write {}: {e}", path.display()))))?;
            }
            if cross.passed() {
                Ok(text)
            } else {
                let s = &cross.sweep;
                let why = format!(
                    "{} completeness failures, {} soundness failures, {} undecided pairs",
                    s.completeness_failures, s.soundness_failures, cross.undecided_pairs
                );
                Err((Some(text), Failure::Verification(why)))
            }
        }
        Command::Classify {
            degrees,
            search,
            format,
            with_oracle,
        } => {
            let options = ReportOptions {
                with_oracle: *with_oracle,
                sweep: sweep_config(search).map_err(fail)?,
            };
            let report = classify(degrees.m, degrees.n, &options).map_err(fail)?;
            let format = match format {
                Format::Json => ReportFormat::Json,
                Format::Md => ReportFormat::Markdown,
            };
            Ok(emit_report(&report, format))
        }
    }
}

fn sweep_config(search: &Search) -> Result<SweepConfig, Failure> {
    let seed_budget = match search.budget {
        Some(b) => b,
        None => match std::env::var(SEED_BUDGET_VAR) {
            Ok(v) => match v.trim().parse::<u64>() {
                Ok(b) if b > 0 => b,
                _ => return Err(Failure::Input(format!("{SEED_BUDGET_VAR} must be a positive integer, got `{v}`"))),
            },
            Err(_) => DEFAULT_SEED_BUDGET,
        },
    };
    let defaults = SweepConfig::default();
    Ok(SweepConfig {
        workers: search.workers.map(|w| w as usize).unwrap_or(defaults.workers),
        seed_budget,
        iso_budget: search.iso_budget,
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn enumerate(d: Degrees, format: Format) -> Outcome {
    let tuples = admissible_tuples(d.m, d.n).map_err(fail)?;
    let strata = stratum_counts(d.m, d.n, &tuples);
    for ((m1, n1), count) in &strata {
        eprintln!("stratum m1={m1} n1={n1}: {count}");
    }
    match format {
        Format::Json => Ok(to_json(&tuples)),
        Format::Md => {
            let mut out = format!("# Admissible tuples for m={}, n={}\n\n", d.m, d.n);
            out.push_str("| m1 \\ n1 |");
            let n1s = divisors(d.n);
            for n1 in &n1s {
                out.push_str(&format!(" {n1} |"));
            }
            out.push_str(&format!("\n|---|{}\n", "---|".repeat(n1s.len())));
            for m1 in divisors(d.m) {
                out.push_str(&format!("| {m1} |"));
                for n1 in &n1s {
                    out.push_str(&format!(" {} |", strata.get(&(m1, *n1)).copied().unwrap_or(0)));
                }
                out.push('\n');
            }
            out.push_str("\n| m1 | n1 | a | b | c | r | s | t |\n|---|---|---|---|---|---|---|---|\n");
            for t in &tuples {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    t.m1, t.n1, t.a, t.b, t.c, t.r, t.s, t.t
                ));
            }
            Ok(out)
        }
    }
}

fn parse_tuple(d: Degrees, text: &str) -> Result<ParameterTuple, Failure> {
    Ok(ParameterTuple::from_assignments(d.m, d.n, text)?)
}

fn construct(d: Degrees, text: &str, emit: Emit) -> Outcome {
    let tuple = parse_tuple(d, text).map_err(fail)?;
    if let Emit::Gap = emit {
        let report = check_conditions(&tuple).map_err(fail)?;
        if !report.passed {
            let why = format!("{tuple}: {}", report.describe_failures());
            return Err(fail(TheoremError::InadmissibleTuple(why)));
        }
        return Ok(gap_script(&tuple));
    }
    let g = construct_group(&tuple).map_err(fail)?;
    Ok(match emit {
        Emit::Cayley => to_cayley_csv(&g.group),
        Emit::Json => to_json(&serde_json::json!({
            "tuple": g.tuple,
            "order": g.group.order(),
            "generators": { "x": g.x, "y": g.y, "z": g.z, "w": g.w },
            "h_order": g.h.order(),
            "k_order": g.k.order(),
        })),
        Emit::Gap => unreachable!(),
    })
}

fn verify(d: Degrees, text: &str, from_cayley: Option<&PathBuf>) -> Outcome {
    let tuple = parse_tuple(d, text).map_err(fail)?;
    let (g, mut lines, mut failed) = match from_cayley {
        None => (construct_group(&tuple).map_err(fail)?, Vec::new(), Vec::new()),
        Some(path) => {
            let csv = fs::read_to_string(path)
                .map_err(|e| fail(Failure::Input(format!("cannot read {}: {e}", path.display()))))?;
            match from_cayley_csv(&csv) {
                Ok(group) => {
                    let g = ExactProductGroup::from_encoded_group(tuple, group).map_err(fail)?;
                    let rels = relation_checks(&g.group, [g.x, g.y, g.z, g.w], &tuple);
                    let bad: Vec<&str> = rels.iter().filter(|(_, ok)| !ok).map(|(r, _)| r.as_str()).collect();
                    let line = if bad.is_empty() {
                        "PASS relations".to_string()
                    } else {
                        format!("FAIL relations: {}", bad.join(", "))
                    };
                    let failed = if bad.is_empty() { vec![] } else { vec!["relations".to_string()] };
                    (g, vec![line], failed)
                }
                Err(GroupError::Parse(msg)) => return Err(fail(Failure::Input(msg))),
                Err(e) => {
                    let text = format!("FAIL group axioms: {e}\n");
                    return Err((Some(text), Failure::Verification("failing check: group axioms".into())));
                }
            }
        }
    };

    for (name, verdict) in [("exact product", verify_exact_product(&g)), ("cores", verify_cores(&g))] {
        if verdict.passed {
            lines.push(format!("PASS {name}"));
        } else {
            lines.push(format!("FAIL {name}: {}", verdict.diagnostics.join("; ")));
            failed.push(name.to_string());
        }
    }
    for check in structural_checks(&g) {
        let status = if check.passed { "PASS" } else { "FAIL" };
        lines.push(format!("{status} {}: {}", check.name, check.detail));
        if !check.passed {
            failed.push(check.name.clone());
        }
    }
    let mut text = lines.join("\n");
    text.push('\n');
    if failed.is_empty() {
        Ok(text)
    } else {
        Err((Some(text), Failure::Verification(format!("failing checks: {}", failed.join(", ")))))
    }
}
