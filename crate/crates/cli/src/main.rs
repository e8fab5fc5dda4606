use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use degen_lab::commands::{self, Outcome};
use degen_lab::render::{render, RenderFormat};
use degen_lab::scenario::{parse_scenario, Scenario};
use degen_lab::{verify, CliError};

#[derive(Parser)]
#[command(name = "degen-lab", version, about = "Expanded degenerations, tropical fibres and stability of point configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Scenario JSON file; reads stdin when omitted or `-`.
    scenario: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Print a diagram instead of the report.
    #[arg(long, value_enum)]
    render: Option<RenderFormat>,
    /// Write the diagram here and still print the report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accept height 0 and answer with a trivial report.
    #[arg(long)]
    allow_smooth: bool,
    /// Power of the determinant bundle; defaults to 2m² + 1.
    #[arg(long = "l")]
    l: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Flat limit of the points.
    Limit(Common),
    /// Tropical triangle of the fibre.
    Fiber(Common),
    /// Stability verdicts for the points on the fibre.
    Stability(Common),
    /// Hilbert–Mumford weights for a linearization.
    Weights(Common),
    /// Moves the configuration to the presentation without unit entries.
    Normalize(Common),
    /// Diagram of the fibre (or of the points' flat limit).
    Render(Common),
    /// Exhaustive self-checks.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_k: u64,
        #[arg(long, default_value_t = 3)]
        max_m: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn read_scenario(c: &Common) -> Result<Scenario, CliError> {
    let text = match &c.scenario {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    parse_scenario(&text, c.allow_smooth)
}

fn emit(c: &Common, outcome: &Outcome, default_render: Option<RenderFormat>) -> Result<(), CliError> {
    let diagram = c.render.or(default_render).map(|fmt| match &outcome.fibre {
        Some(f) => render(f, &outcome.points, fmt),
        None => String::new(),
    });
    match (&diagram, &c.out) {
        (Some(d), Some(path)) => {
            std::fs::write(path, d)?;
            print_report(c.format, outcome);
        }
        (Some(d), None) => print!("{d}"),
        (None, _) => print_report(c.format, outcome),
    }
    Ok(())
}

fn print_report(format: Format, outcome: &Outcome) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&outcome.report).expect("reports serialize")
        ),
        Format::Text => print!("{}", commands::to_text(&outcome.report)),
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (common, default_render, outcome) = match &cli.command {
        Command::Verify {
            max_k,
            max_m,
            format,
        } => {
            let results = verify::run(*max_k, *max_m);
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&results).expect("results serialize")
                ),
                Format::Text => {
                    for r in &results {
                        match &r.failure {
                            None => println!("PASS {} ({} cases)", r.name, r.cases),
                            Some(f) => println!("FAIL {}: {f}", r.name),
                        }
                    }
                }
            }
            return Ok(results.iter().all(|r| r.passed()));
        }
        Command::Limit(c) => (c, None, commands::limit(&read_scenario(c)?)?),
        Command::Fiber(c) => (c, None, commands::fiber(&read_scenario(c)?)?),
        Command::Stability(c) => (c, None, commands::stability(&read_scenario(c)?, c.l)?),
        Command::Weights(c) => (c, None, commands::weights(&read_scenario(c)?, c.l)?),
        Command::Normalize(c) => (c, None, commands::normalize(&read_scenario(c)?)?),
        Command::Render(c) => (
            c,
            Some(RenderFormat::Svg),
            commands::fiber(&read_scenario(c)?)?,
        ),
    };
    emit(common, &outcome, default_render)?;
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
