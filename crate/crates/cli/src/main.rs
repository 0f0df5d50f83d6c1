mod suites;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kuniform::hetero::{ame_verdict, diff_table4, AmeVerdict, DimensionProfile, DEFAULT_BUDGET};
use kuniform::oracle::{direct_enumerator, direct_shadow, is_k_uniform, OracleConfig, PureState};
use kuniform::uniform_bounds::tables::parse_range;
use kuniform::uniform_bounds::{bound_range, diff_bound_table, BoundTable, BoundVerdict};
use kuniform::Error;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "kuniform",
    version,
    about = "Exact bounds for k-uniform and AME states"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format
    #[arg(
        long,
        global = true,
        value_enum,
        env = "KUNIFORM_FORMAT",
        default_value = "json"
    )]
    format: Format,
    /// Subset-search budget, counted in dimension classes
    #[arg(long, global = true, env = "KUNIFORM_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Largest Hilbert-space dimension accepted by the state oracle
    #[arg(
        long = "cap-dim",
        global = true,
        env = "KUNIFORM_CAP_DIM",
        default_value_t = 4096
    )]
    cap_dim: u128,
    /// Worker threads for the parallel scans
    #[arg(long, global = true, env = "KUNIFORM_THREADS", default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Upper bound on k for (C^d)^N
    Bound {
        #[arg(long)]
        d: u32,
        #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
        n: Option<usize>,
        /// Inclusive range "lo:hi"
        #[arg(long = "n-range")]
        n_range: Option<String>,
    },
    /// Recompute a bundled table and diff it against the checked-in values
    Table {
        #[arg(long, value_parser = ["I", "II", "III", "IV"])]
        paper: String,
    },
    /// AME verdict for a dimension profile such as "3x1,2x8"
    Ame {
        #[arg(long)]
        dims: String,
    },
    /// Brute-force checks on an explicit state file
    State {
        #[arg(long)]
        file: PathBuf,
        #[arg(
            long = "check-uniform",
            conflicts_with = "enumerate",
            required_unless_present = "enumerate"
        )]
        check_uniform: Option<usize>,
        #[arg(long)]
        enumerate: bool,
    },
    /// Run a cross-validation suite
    Verify {
        #[arg(long, value_enum)]
        suite: suites::Suite,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Status {
    Ok,
    ViolationFound,
    NotApplicable,
    Error,
}

#[derive(Serialize)]
struct CommandResult {
    command: String,
    status: Status,
    payload: Value,
}

/// What a command produced: a status, a JSON payload, and optionally a CSV rendering.
struct Output {
    status: Status,
    payload: Value,
    csv: Option<String>,
}

impl Output {
    fn json(status: Status, payload: impl Serialize) -> Self {
        Output {
            status,
            payload: serde_json::to_value(payload).expect("payload serializes"),
            csv: None,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

fn failure(e: &Error) -> Output {
    let status = match e {
        Error::NotApplicable(_) => Status::NotApplicable,
        _ => Status::Error,
    };
    let mut payload = json!({ "message": e.to_string() });
    if let Error::BudgetExceeded {
        evaluated,
        total,
        budget,
    } = e
    {
        payload["partial_search"] = json!({
            "evaluated": evaluated.to_string(),
            "total": total.to_string(),
            "budget": budget.to_string(),
        });
    }
    Output {
        status,
        payload,
        csv: None,
    }
}

fn bound_csv(records: &[BoundVerdict]) -> String {
    let mut out = String::from("N,k_max,provenance\n");
    for r in records {
        writeln!(out, "{},{},{}", r.n_parties, r.k_max, r.provenance).unwrap();
    }
    out
}

fn cmd_bound(d: u32, n: Option<usize>, n_range: Option<&str>) -> kuniform::Result<Output> {
    let (lo, hi) = match (n, n_range) {
        (Some(n), _) => (n, n),
        (None, Some(r)) => {
            let (lo, hi) = r
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("range {r:?} is not lo:hi")))?;
            parse_range(&format!("{}-{}", lo.trim(), hi.trim()))?
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    let records = bound_range(d, lo..=hi)?;
    let csv = bound_csv(&records);
    Ok(Output::json(Status::Ok, &records).with_csv(csv))
}

fn cmd_table(paper: &str) -> kuniform::Result<Output> {
    if paper == "IV" {
        let diff = diff_table4()?;
        let mut csv = String::from("d1,d2,threshold,shadow_n\n");
        for e in &diff.entries {
            let ns: Vec<String> = e.shadow_n.iter().map(usize::to_string).collect();
            writeln!(csv, "{},{},{},{}", e.d1, e.d2, e.threshold, ns.join(" ")).unwrap();
        }
        let mismatches: Vec<_> = diff.mismatches().collect();
        let status = if mismatches.is_empty() {
            Status::Ok
        } else {
            Status::ViolationFound
        };
        let payload = json!({
            "table": "IV",
            "entries": diff.entries,
            "diffs": mismatches,
        });
        return Ok(Output::json(status, payload).with_csv(csv));
    }
    let table: BoundTable = paper.parse()?;
    let diff = diff_bound_table(table)?;
    let mut csv = String::from("N_range,k_max\n");
    for c in &diff.compressed {
        writeln!(csv, "{c},{}", c.k_max).unwrap();
    }
    let status = if diff.matches() {
        Status::Ok
    } else {
        Status::ViolationFound
    };
    let payload = json!({
        "table": diff.table,
        "d": diff.local_dim,
        "cells": diff.compressed.iter().map(|c| json!({
            "N_range": c.to_string(),
            "k_max": c.k_max,
        })).collect::<Vec<_>>(),
        "records": diff.computed,
        "diffs": diff.cell_diffs,
        "layout_matches": diff.layout_matches,
    });
    Ok(Output::json(status, payload).with_csv(csv))
}

fn cmd_ame(dims: &str, budget: u128) -> kuniform::Result<Output> {
    let profile: DimensionProfile = dims.parse()?;
    let verdict = ame_verdict(&profile, budget)?;
    let status = match verdict {
        AmeVerdict::Unknown => Status::Ok,
        _ => Status::ViolationFound,
    };
    let payload = json!({ "profile": profile.to_string(), "result": verdict });
    Ok(Output::json(status, payload))
}

fn cmd_state(
    file: &PathBuf,
    check_uniform: Option<usize>,
    cap_dim: u128,
) -> kuniform::Result<Output> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", file.display())))?;
    let state = PureState::from_json(&text)?;
    let config = OracleConfig {
        cap_dim,
        ..OracleConfig::default()
    };
    if let Some(k) = check_uniform {
        let uniform = is_k_uniform(&state, k, &config)?;
        return Ok(
            Output::json(Status::Ok, json!({ "k": k, "uniform": uniform }))
                .with_csv(format!("k,uniform\n{k},{uniform}\n")),
        );
    }
    let a = direct_enumerator(&state, &config)?;
    let s = direct_shadow(&state, &config)?;
    let mut csv = String::from("j,a_j,s_j\n");
    for (j, (x, y)) in a.coeffs().iter().zip(s.coeffs()).enumerate() {
        writeln!(csv, "{j},{x},{y}").unwrap();
    }
    Ok(Output::json(Status::Ok, json!({ "a": a, "s": s })).with_csv(csv))
}

fn run(cli: &Cli) -> Output {
    let g = &cli.global;
    let result = match &cli.command {
        Command::Bound { d, n, n_range } => cmd_bound(*d, *n, n_range.as_deref()),
        Command::Table { paper } => cmd_table(paper),
        Command::Ame { dims } => cmd_ame(dims, g.budget),
        Command::State {
            file,
            check_uniform,
            ..
        } => cmd_state(file, *check_uniform, g.cap_dim),
        Command::Verify { suite } => Ok(suites::run(*suite)),
    };
    result.unwrap_or_else(|e| failure(&e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads.max(1))
        .build_global()
    {
        eprintln!("kuniform: cannot start thread pool: {e}");
        return ExitCode::FAILURE;
    }
    let out = run(&cli);
    let command: Vec<String> = std::env::args().skip(1).collect();
    let text = match (cli.global.format, &out.csv) {
        (Format::Csv, Some(csv)) if matches!(out.status, Status::Ok | Status::ViolationFound) => {
            csv.clone()
        }
        _ => {
            let result = CommandResult {
                command: command.join(" "),
                status: out.status,
                payload: out.payload.clone(),
            };
            serde_json::to_string_pretty(&result).expect("result serializes") + "\n"
        }
    };
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        // a closed pipe (e.g. `| head`) is not an error of the computation
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("kuniform: cannot write output: {e}");
            return ExitCode::FAILURE;
        }
    }
    match out.status {
        Status::Ok | Status::ViolationFound => ExitCode::SUCCESS,
        Status::NotApplicable => ExitCode::from(3),
        Status::Error => {
            if let Some(m) = out.payload.get("message").and_then(Value::as_str) {
                eprintln!("kuniform: {m}");
            }
            ExitCode::FAILURE
        }
    }
}
