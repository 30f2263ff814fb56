//! `alliance` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 validation failure, 3 degenerate
//! game or objective.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use alliance_core::equilibrium::region_diagram;
use alliance_core::report::svg::{payoff_annotations, render_region_svg};
use alliance_core::report::sweep::export_sweep_csv;
use alliance_core::report::{self, scenario, Render, ReportError, Scenario};
use alliance_core::{Player, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "alliance", version, about = "Alliance stability under attack pressure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Region, equilibria and payoffs at the scenario's attack levels
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// SVG diagram of equilibrium regions
    Diagram {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        resolution: Option<usize>,
        /// Label regions with the attacker's payoff (needs [attacker])
        #[arg(long)]
        annotate: bool,
    },
    /// Optimal attack plan
    Attack {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta: Option<Scalar>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Commitment advice for one firm
    Advise {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        focal: u8,
        #[arg(long)]
        margin: Option<Scalar>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Attacker regimes as the market margin varies
    Regimes {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// CSV grid sweep
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        resolution: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    scenario: PathBuf,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Invalid(String),
    Degenerate(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Degenerate(_) => EXIT_DEGENERATE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Invalid(m) | Failure::Degenerate(m) => m,
        }
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Degenerate(_) => Failure::Degenerate(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<scenario::ScenarioError> for Failure {
    fn from(e: scenario::ScenarioError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn load(path: &Path) -> Result<Scenario, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(Scenario::parse(&text)?)
}

fn render<R: Render>(r: &R, format: Format) -> String {
    match format {
        Format::Human => r.human(),
        Format::Machine => r.machine(),
    }
}

fn resolution(s: &Scenario, flag: Option<usize>) -> Result<usize, Failure> {
    match flag {
        Some(n) => {
            scenario::check_resolution(n)?;
            Ok(n)
        }
        None => Ok(s.resolution()),
    }
}

fn execute(command: Command) -> Result<(String, Option<PathBuf>), Failure> {
    match command {
        Command::Analyze { common, format } => {
            let s = load(&common.scenario)?;
            Ok((render(&report::analyze(&s)?, format), common.out))
        }
        Command::Diagram { common, resolution: res, annotate } => {
            let s = load(&common.scenario)?;
            let n = resolution(&s, res)?;
            let annotations = if annotate { Some(payoff_annotations(&s.game, s.require_attacker()?)) } else { None };
            let diagram = region_diagram(&s.game, n);
            Ok((render_region_svg(&diagram, annotations.as_ref()), common.out))
        }
        Command::Attack { common, delta, format } => {
            let s = load(&common.scenario)?;
            Ok((render(&report::attack(&s, delta.as_ref())?, format), common.out))
        }
        Command::Advise { common, focal, margin, format } => {
            let s = load(&common.scenario)?;
            let focal = if focal == 1 { Player::One } else { Player::Two };
            Ok((render(&report::advice(&s, focal, margin.as_ref())?, format), common.out))
        }
        Command::Regimes { common, format } => {
            let s = load(&common.scenario)?;
            Ok((render(&report::regimes(&s)?, format), common.out))
        }
        Command::Sweep { common, resolution: res } => {
            let s = load(&common.scenario)?;
            let n = resolution(&s, res)?;
            Ok((export_sweep_csv(&s.game, s.attacker.as_ref(), n), common.out))
        }
    }
}

/// Runs one command and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INVALID
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = execute(cli.command).and_then(|(text, path)| match path {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Io(format!("cannot write output: {e}"))),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
