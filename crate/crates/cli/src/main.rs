use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dynint_cli::{run, Command, CommandConfig, Format};
use dynint_core::PairWindow;

/// S-integral points in orbits of rational maps on the projective line.
#[derive(Debug, Parser)]
#[command(name = "dynint", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Map as an expression in x (e.g. "x^2+1") or "num=...;den=...".
    #[arg(long, allow_hyphen_values = true)]
    map: String,
    /// Point whose forward orbit is indexed by m.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Point whose forward orbit is indexed by n.
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// Single point for orbit and certify.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Comma-separated primes.
    #[arg(long = "S", default_value = "")]
    s: String,
    /// Search window MxN.
    #[arg(long)]
    window: Option<PairWindow>,
    /// Orbit length, divisor depth, or certification iterations.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit the generation time so repeated runs are byte-identical.
    #[arg(long)]
    no_timestamp: bool,
    #[arg(long, default_value_t = dynint_core::search::DEFAULT_DIGIT_BUDGET)]
    digit_budget: usize,
    #[arg(long, default_value_t = dynint_core::ratmap::DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let points: Vec<String> = match cli.command {
        Command::Orbit | Command::Certify => cli.point.into_iter().collect(),
        _ => cli.u.into_iter().chain(cli.w).collect(),
    };
    let config = CommandConfig {
        command: cli.command,
        map_spec: cli.map,
        points,
        s: cli.s,
        window: cli.window,
        n: cli.n,
        format: cli.format,
        timestamp: !cli.no_timestamp,
        digit_budget: cli.digit_budget,
        degree_cap: cli.degree_cap,
    };
    let outcome = run(&config);
    let text = outcome.render(config.format);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("dynint: cannot write report: {e}");
        return ExitCode::from(1);
    }
    if let Some(err) = outcome.document.get("error") {
        eprintln!("dynint: {}", err["message"].as_str().unwrap_or("error"));
    }
    ExitCode::from(outcome.exit_code as u8)
}
