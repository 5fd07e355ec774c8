//! `anyonkit`: consistency checks, braid representation reports, gate
//! identities and protocol runs, written as JSON.
//!
//! Exit status is 0 when every check in the report passed, 1 when one
//! failed and 2 on bad input or I/O errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyonkit::adaptive_sim::LIBRARY_NAMES;
use anyonkit::{ds3_model, AnyonLabel, AnyonModel};
use clap::builder::PossibleValuesParser;
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use report::{ModelInfo, Recorder};

type BoxError = Box<dyn std::error::Error + Send + Sync>;

#[derive(Parser, Debug)]
#[command(name = "anyonkit", version, about = "Exact toolkit for the D(S3) anyon model")]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Load the model from a JSON file written by `dump` instead of the built-in data.
    #[arg(long, global = true, value_name = "PATH")]
    model: Option<PathBuf>,
    /// Add wall-clock timings to the report. Off by default so that exact
    /// reports are byte-identical between runs.
    #[arg(long, global = true)]
    timing: bool,
    /// Progress on stderr; repeat for more.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pentagon, hexagon, F-unitarity, fusion, Verlinde and modular checks.
    Verify(VerifyArgs),
    /// Braid representation on V_z^{mmmm}: generators, sectors and image groups.
    Rep(RepArgs),
    /// Gate identities obtained by braiding.
    Gates(GatesArgs),
    /// Run a measurement-driven protocol exactly or by sampling.
    Protocol(ProtocolArgs),
    /// Print the model data.
    Dump(DumpArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pentagon,
    Hexagon,
    Unitarity,
    Fusion,
    Verlinde,
    Modular,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these suites (repeatable). Default: all.
    #[arg(long, value_enum)]
    only: Vec<Suite>,
    /// Unlock debugging flags.
    #[arg(long, hide = true)]
    debug: bool,
    /// Overwrite one symbol before checking, e.g. `F:BGG:G:-1->1` or `R:GG:A:w^2->w`.
    #[arg(long, hide = true, requires = "debug", value_name = "SPEC")]
    mutate: Vec<String>,
}

#[derive(Args, Debug)]
pub struct RepArgs {
    /// Leaf charge.
    #[arg(long)]
    m: AnyonLabel,
    /// Total charge.
    #[arg(long)]
    z: AnyonLabel,
    /// Number of strands: 4 gives the full report, 8 checks the braid relations.
    #[arg(long, default_value = "4", value_parser = PossibleValuesParser::new(["4", "8"]))]
    strands: String,
    /// Compare sector dimensions and image orders with the built-in table.
    #[arg(long = "assert-table4")]
    assert_table: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GateName {
    Pq,
    Hprime,
    Crlz,
    Sum,
    WGates,
}

impl GateName {
    fn key(self) -> &'static str {
        match self {
            GateName::Pq => "pq",
            GateName::Hprime => "hprime",
            GateName::Crlz => "crlz",
            GateName::Sum => "sum",
            GateName::WGates => "w-gates",
        }
    }
}

#[derive(Args, Debug)]
pub struct GatesArgs {
    /// Identity to check (repeatable). Default: all.
    #[arg(long, value_enum)]
    check: Vec<GateName>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Sample,
}

#[derive(Args, Debug)]
pub struct ProtocolArgs {
    #[arg(long, value_parser = PossibleValuesParser::new(LIBRARY_NAMES))]
    name: String,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Round budget for repeat-until-success loops.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..=64))]
    max_iter: u32,
    /// Trials in sample mode.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Seed in sample mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample-mode tolerance in binomial standard deviations.
    #[arg(long, default_value_t = 3.0)]
    sigmas: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn init_threads() -> Result<(), BoxError> {
    if let Ok(v) = std::env::var("ANYONKIT_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("ANYONKIT_THREADS must be a positive integer, got `{v}`"))?;
        if n == 0 {
            return Err("ANYONKIT_THREADS must be at least 1".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn load_model(path: &Option<PathBuf>) -> Result<AnyonModel, BoxError> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Ok(AnyonModel::from_json(&text)?)
        }
        None => Ok(ds3_model().clone()),
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), BoxError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, BoxError> {
    init_threads()?;
    let mut model = load_model(&cli.model)?;

    if let Command::Dump(args) = &cli.command {
        let Format::Json = args.format;
        let json = model.to_json();
        let again = AnyonModel::from_json(&json)?;
        let round_trips = again.fingerprint() == model.fingerprint();
        write_output(&cli.out, &format!("{json}\n"))?;
        if !round_trips {
            eprintln!("error: exported model does not reload to the same data");
        }
        return Ok(round_trips);
    }

    let mut rec = Recorder::new(cli.timing, cli.verbose);
    match &cli.command {
        Command::Verify(args) => {
            for spec in &args.mutate {
                model.apply_mutation(spec)?;
            }
            commands::verify(&mut rec, &model, args)
        }
        Command::Rep(args) => commands::rep(&mut rec, &model, args)?,
        Command::Gates(args) => commands::gates(&mut rec, args)?,
        Command::Protocol(args) => commands::protocol(&mut rec, args)?,
        Command::Dump(_) => unreachable!(),
    }
    let info = ModelInfo { name: model.name().to_string(), fingerprint: model.fingerprint() };
    let report = rec.finish(std::env::args().skip(1).collect(), info);
    let pass = report.pass;
    write_output(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&report)?))?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
