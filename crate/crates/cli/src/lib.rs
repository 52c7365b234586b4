//! `vforces`: command-line front end for the vacuum-forces library.
//!
//! Every subcommand produces a [`ResultTable`] written as CSV (default) or
//! JSON. Exit codes: 0 success, 2 configuration error, 3 numerical failure.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod scan;
pub mod table;

pub use config::RunConfig;
pub use table::ResultTable;

use commands::*;
use config::{Common, Format};
use scan::{CrossoverArgs, ScanArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vacuum_forces::Error> for CliError {
    fn from(e: vacuum_forces::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

/// A finished table, possibly with failed rows.
pub struct Outcome {
    pub table: ResultTable,
    pub failed_rows: usize,
}

impl From<ResultTable> for Outcome {
    fn from(table: ResultTable) -> Self {
        Outcome { table, failed_rows: 0 }
    }
}

#[derive(Debug, Parser)]
#[command(name = "vforces", version, about = "Dispersion, resonance and vacuum-field calculations for neutral atoms")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Casimir–Polder energy of two atoms.
    TwoBody(TwoBodyArgs),
    /// Three-body dispersion energy.
    ThreeBody(ThreeBodyArgs),
    /// Far-zone atom–plate energy and force.
    AtomWall(AtomWallArgs),
    /// Two atoms in front of a conducting plate.
    PairNearPlate(PairNearPlateArgs),
    /// Renormalized field energy densities around an atom or near a plate.
    EnergyDensity(EnergyDensityArgs),
    /// Two-body energy from the vacuum-field correlation route.
    Correlation(CorrelationArgs),
    /// Resonance energy of two identical atoms in a Bell state.
    Resonance(ResonanceArgs),
    /// Uniformly accelerated atoms.
    Accelerated(AcceleratedArgs),
    /// Evaluate a quantity over a distance grid with local log-log slopes.
    Scan(ScanArgs),
    /// Distance where the full two-body energy departs from the London law.
    Crossover(CrossoverArgs),
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let c = &cli.common;
    match &cli.command {
        Command::TwoBody(a) => two_body(a, c).map(Into::into),
        Command::ThreeBody(a) => three_body(a, c).map(Into::into),
        Command::AtomWall(a) => atom_wall(a, c).map(Into::into),
        Command::PairNearPlate(a) => pair_near_plate(a, c).map(Into::into),
        Command::EnergyDensity(a) => energy_density(a, c).map(Into::into),
        Command::Correlation(a) => correlation(a, c).map(Into::into),
        Command::Resonance(a) => resonance(a, c).map(Into::into),
        Command::Accelerated(a) => accelerated(a, c).map(Into::into),
        Command::Scan(a) => scan::scan(a, c),
        Command::Crossover(a) => scan::crossover(a, c).map(Into::into),
    }
}

fn render(table: &mut ResultTable, common: &Common) -> String {
    let regimes = table.regimes();
    if !regimes.is_empty() {
        table.meta("regimes", regimes.join(","));
    }
    table.meta("units", common.units.as_str());
    table.convert(config::Units::Natural.system(), common.units.system());
    match common.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

/// Run the CLI on `argv` (including the program name), writing the table to
/// `out` or the `--output` file and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_CONFIG
                }
            };
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "vforces: {e}");
            return e.exit_code();
        }
    };
    let mut table = outcome.table;
    let text = render(&mut table, &cli.common);
    let written = match &cli.common.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "vforces: cannot write output: {e}");
        return EXIT_CONFIG;
    }
    if outcome.failed_rows > 0 {
        let _ = writeln!(err, "vforces: {} grid point(s) failed numerically", outcome.failed_rows);
        return EXIT_NUMERICAL;
    }
    EXIT_OK
}
