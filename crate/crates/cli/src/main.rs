use clap::{Args, Parser, Subcommand};
use fixlab::commands;
use fixlab::input::Failure;
use fixlab::report::{CommandReport, OutFormat};
use fixlab::suite::{run_suite, SuiteConfig};
use fixlab_core::Caps;
use std::path::PathBuf;
use std::process::ExitCode;

/// Workbench for order-theoretic fixed points: check carriers, run
/// engines, classify ordinal notations, probe two-stage structures,
/// and solve a small dataflow analysis — deterministically.
#[derive(Parser)]
#[command(name = "fixlab", version, disable_help_subcommand = true)]
struct Cli {
    /// Output format: text, json, or dot.
    #[arg(long, global = true, default_value = "text")]
    out: String,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a poset for chain and directed completeness.
    Check {
        /// JSON poset description.
        #[arg(long)]
        poset: PathBuf,
    },
    /// Run a fixed-point engine on a self-map.
    Solve {
        /// JSON self-map description (poset plus table or rule).
        #[arg(long)]
        map: PathBuf,
        /// Engine: iterate, tarski, pataraia, kt, dacar, or transfinite.
        #[arg(long)]
        engine: String,
        /// Start element (defaults to the least element).
        #[arg(long)]
        start: Option<String>,
        /// Stage bound for the transfinite engine, e.g. "w" or "w*2+3".
        #[arg(long)]
        ordinal: Option<String>,
    },
    /// Ordinal notation tools.
    #[command(subcommand)]
    Ordinal(OrdinalCmd),
    /// Two-stage carrier tools.
    #[command(subcommand)]
    Arrow(ArrowCmd),
    /// Solve a gen/kill reaching-facts analysis over a flow graph.
    Dataflow {
        /// JSON flow-graph description.
        #[arg(long)]
        graph: PathBuf,
        /// Engine: iterate, tarski, pataraia, or kt.
        #[arg(long, default_value = "tarski")]
        engine: String,
    },
    /// Run the twelve-check self-test suite.
    Suite(SuiteArgs),
}

#[derive(Subcommand)]
enum OrdinalCmd {
    /// Classify all strict orders on a small named carrier.
    Classify {
        /// Carrier size (number of points).
        #[arg(long, default_value_t = 2)]
        carrier: usize,
    },
    /// Parse a notation, normalize it, and invert its successor.
    Parse {
        /// Notation expression, e.g. "w^2*3+w+1".
        #[arg(long)]
        ordinal: String,
    },
    /// Sample random notation triples and check the order laws.
    Laws {
        /// Seed for the notation sampler.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of triples to draw.
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum ArrowCmd {
    /// Check a two-stage carrier for internal chain completeness.
    CheckCc {
        /// JSON two-stage poset description.
        #[arg(long, visible_alias = "input")]
        poset: PathBuf,
    },
    /// Compare earlier-stage logical constructions with their
    /// classical counterparts.
    Logical {
        /// JSON two-stage poset description.
        #[arg(long, visible_alias = "input")]
        poset: PathBuf,
    },
    /// Verify the iteration-length bound for a fiberwise family over a
    /// collapsed chain.
    Blowup {
        /// Chain bound n (the collapsed chain has n+1 later points).
        #[arg(long)]
        n: u64,
        /// JSON family description.
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Args)]
struct SuiteArgs {
    /// Largest carrier size the enumeration-driven checks sweep.
    #[arg(long, default_value_t = 4, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=8))]
    max_size: usize,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Worker threads for running checks concurrently.
    #[arg(long, default_value_t = 1, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=64))]
    jobs: usize,
}

fn print_report(report: &CommandReport, out: OutFormat) -> Result<bool, Failure> {
    match out {
        OutFormat::Text => print!("{}", report.render_text()),
        OutFormat::Json => print!("{}", report.render_json()),
        OutFormat::Dot => match &report.dot {
            Some(dot) => print!("{dot}"),
            None => {
                return Err(Failure::Usage(
                    "this command has no graph output; use --out text or --out json".to_string(),
                ))
            }
        },
    }
    Ok(report.pass)
}

fn run(cli: Cli, caps: &Caps) -> Result<bool, Failure> {
    let out = OutFormat::parse(&cli.out).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown output format '{}'; expected text, json, or dot",
            cli.out
        ))
    })?;

    match cli.cmd {
        Cmd::Check { poset } => print_report(&commands::cmd_check(&poset, caps)?, out),
        Cmd::Solve { map, engine, start, ordinal } => print_report(
            &commands::cmd_solve(&map, &engine, start.as_deref(), ordinal.as_deref(), caps)?,
            out,
        ),
        Cmd::Ordinal(sub) => match sub {
            OrdinalCmd::Classify { carrier } => {
                print_report(&commands::cmd_ordinal_classify(carrier, caps)?, out)
            }
            OrdinalCmd::Parse { ordinal } => {
                print_report(&commands::cmd_ordinal_parse(&ordinal)?, out)
            }
            OrdinalCmd::Laws { seed, n } => {
                print_report(&commands::cmd_ordinal_laws(seed, n)?, out)
            }
        },
        Cmd::Arrow(sub) => match sub {
            ArrowCmd::CheckCc { poset } => {
                print_report(&commands::cmd_arrow_check_cc(&poset, caps)?, out)
            }
            ArrowCmd::Logical { poset } => {
                print_report(&commands::cmd_arrow_logical(&poset, caps)?, out)
            }
            ArrowCmd::Blowup { n, family } => {
                print_report(&commands::cmd_arrow_blowup(n, &family, caps)?, out)
            }
        },
        Cmd::Dataflow { graph, engine } => {
            print_report(&commands::cmd_dataflow(&graph, &engine, caps)?, out)
        }
        Cmd::Suite(args) => {
            let cfg = SuiteConfig {
                max_size: args.max_size,
                seed: args.seed,
                jobs: args.jobs,
                caps: caps.clone(),
            };
            let run = run_suite(&cfg);
            match out {
                OutFormat::Text => print!("{}", run.report.render_text()),
                OutFormat::Json => print!("{}", run.report.render_json()),
                OutFormat::Dot => {
                    return Err(Failure::Usage(
                        "the suite has no graph output; use --out text or --out json".to_string(),
                    ))
                }
            }
            for (index, name, took) in &run.timings {
                eprintln!("timing: {index:02} {name} {:.3}s", took.as_secs_f64());
            }
            Ok(run.report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let mut caps = Caps::default();
    if let Ok(overrides) = std::env::var("FIXLAB_CAPS") {
        if let Err(msg) = caps.apply_overrides(&overrides) {
            eprintln!("error: invalid FIXLAB_CAPS: {msg}");
            return ExitCode::from(2);
        }
    }

    match run(cli, &caps) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
