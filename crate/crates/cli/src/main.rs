use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::error;

use ade_hall::exactmath::FiniteField;
use ade_hall::pipeline::{
    catalog, cross_check_a_type, emit_report, expected_leading, fit_and_verify, run_entry,
    run_experiment, Cache, ExperimentSpec, Format, Kind, Problem, Report, Resolved, RunOptions,
    DEFAULT_BUDGET,
};
use ade_hall::quiverlab::{collect_bistable, dimensions};
use ade_hall::Error;

#[derive(Parser)]
#[command(
    name = "ade-hall",
    version,
    about = "Exact point counts and their counting polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Sample field sizes, overriding the spec's list.
    #[arg(long, global = true, value_delimiter = ',')]
    q: Option<Vec<u32>>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSONL count cache.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// csv, md or json.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Largest estimated enumeration cost to accept.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Subcommand)]
enum Command {
    /// Count one spec and print the records.
    Count {
        #[arg(long)]
        spec: PathBuf,
        /// Also print up to N bistable data per field as JSON lines.
        #[arg(long, value_name = "N")]
        dump: Option<usize>,
    },
    /// Count, fit and verify against the oracle.
    Fit {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Print the predicted degree and leading coefficient.
    Oracle {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Compare a concentrated type-A quiver count with the classical count.
    CrossCheck {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run the built-in acceptance suite.
    Catalog,
    /// Render the records held in the cache.
    Report,
}

fn load_spec(path: &PathBuf, q: &Option<Vec<u32>>) -> Result<Resolved, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut spec = ExperimentSpec::parse(&text)?;
    if let Some(q) = q {
        spec.q = q.clone();
    }
    spec.resolve()
}

fn dump_data(spec: &Resolved, limit: usize) -> Result<(), Error> {
    let Problem::Quiver { graph, xi, .. } = &spec.problem else {
        return Err(Error::InvalidSpec("--dump needs a quiver spec".into()));
    };
    let (d, v) = dimensions(xi)?;
    for q in spec.all_q() {
        for datum in collect_bistable(graph, FiniteField::from_order(q)?, &d, &v, limit)? {
            println!(
                "{}",
                serde_json::to_string(&datum.to_json()).expect("datum serializes")
            );
        }
    }
    Ok(())
}

/// Exit code 0 on success, 1 on a failed verification.
fn run(cli: Cli) -> Result<u8, Error> {
    let opts = RunOptions { budget: cli.budget };
    let mut cache = match &cli.cache {
        Some(p) => Cache::open(p)?,
        None => Cache::memory(),
    };
    let format = cli.format.unwrap_or(Format::Md);
    match &cli.command {
        Command::Count { spec, dump } => {
            let spec = load_spec(spec, &cli.q)?;
            let records = run_experiment(&spec, &opts, &mut cache)?;
            print!(
                "{}",
                emit_report(
                    &Report {
                        records,
                        ..Report::default()
                    },
                    format
                )
            );
            if let Some(n) = dump {
                dump_data(&spec, *n)?;
            }
            Ok(0)
        }
        Command::Fit { spec } => {
            let spec = load_spec(spec, &cli.q)?;
            let records = run_experiment(&spec, &opts, &mut cache)?;
            let v = fit_and_verify(&spec, &records)?;
            let pass = v.verdict.passed();
            print!(
                "{}",
                emit_report(
                    &Report {
                        records,
                        verify: vec![v],
                        cross: Vec::new()
                    },
                    format
                )
            );
            Ok(if pass { 0 } else { 1 })
        }
        Command::Oracle { spec } => {
            let spec = load_spec(spec, &cli.q)?;
            for p in std::iter::once(&spec.problem).chain(&spec.partner) {
                println!(
                    "{}: degree {}, leading {}",
                    p.label(),
                    p.expected_degree()?,
                    expected_leading(p)?
                );
            }
            Ok(0)
        }
        Command::CrossCheck { spec } => {
            let spec = load_spec(spec, &cli.q)?;
            let c = cross_check_a_type(&spec, &opts, &mut cache)?;
            print!(
                "{}",
                emit_report(
                    &Report {
                        cross: vec![c],
                        ..Report::default()
                    },
                    format
                )
            );
            Ok(0)
        }
        Command::Catalog => {
            let mut report = Report::default();
            let mut failed = 0;
            for e in catalog() {
                let mut e = e;
                if let Some(q) = &cli.q {
                    if e.spec.kind == Kind::CrossCheck {
                        e.spec.q = q.clone();
                    }
                }
                let outcome = match run_entry(&e, &opts, &mut cache, &mut report) {
                    Ok(o) => o,
                    Err(err @ Error::BudgetExceeded { .. }) => return Err(err),
                    Err(err) => ade_hall::pipeline::CatalogOutcome {
                        name: e.name.clone(),
                        pass: false,
                        detail: err.to_string(),
                    },
                };
                failed += usize::from(!outcome.pass);
                println!(
                    "{} {}: {}",
                    if outcome.pass { "PASS" } else { "FAIL" },
                    outcome.name,
                    outcome.detail
                );
            }
            if let Some(f) = cli.format {
                print!("{}", emit_report(&report, f));
            }
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Report => {
            if cli.cache.is_none() {
                return Err(Error::InvalidSpec("report needs --cache".into()));
            }
            let records = cache.records().cloned().collect();
            print!(
                "{}",
                emit_report(
                    &Report {
                        records,
                        ..Report::default()
                    },
                    format
                )
            );
            Ok(0)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::ValidationFailed { .. }
        | Error::CrossCheckMismatch { .. }
        | Error::InexactOrbitCount { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            error!("cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
