//! Run configuration: shared options, atom loading, sweeps and the config hash.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use vacuum_forces::polarizability::AtomDescription;
use vacuum_forces::units::UnitSystem;
use vacuum_forces::{DiffSpec, QuadratureSpec, Vec3};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Natural,
    Atomic,
    Si,
}

impl Units {
    pub fn system(self) -> UnitSystem {
        match self {
            Units::Natural => UnitSystem::natural_bohr(),
            Units::Atomic => UnitSystem::Atomic,
            Units::Si => UnitSystem::SiOutputOnly,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Units::Natural => "natural",
            Units::Atomic => "atomic",
            Units::Si => "si",
        }
    }
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, short, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Display units; inputs are always natural units with the Bohr radius as length unit.
    #[arg(long, value_enum, default_value_t = Units::Natural, global = true)]
    pub units: Units,
    /// Relative tolerance of the frequency quadrature.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Absolute tolerance of the frequency quadrature.
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_subdivisions: Option<usize>,
    /// Finest finite-difference step of the three-body derivative chain.
    #[arg(long, global = true)]
    pub base_step: Option<f64>,
    #[arg(long, global = true)]
    pub richardson_levels: Option<usize>,
}

impl Common {
    pub fn quadrature(&self) -> Result<QuadratureSpec, CliError> {
        let mut q = QuadratureSpec::default();
        if let Some(v) = self.rel_tol {
            q.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            q.abs_tol = v;
        }
        if let Some(v) = self.max_subdivisions {
            q.max_subdivisions = v;
        }
        q.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(q)
    }

    pub fn diff(&self) -> Result<DiffSpec, CliError> {
        let mut d = DiffSpec::default();
        if let Some(v) = self.base_step {
            d.base_step = v;
        }
        if let Some(v) = self.richardson_levels {
            d.richardson_levels = v;
        }
        d.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(d)
    }
}

/// Parse an atom given inline (text starting with `{`) or as a file path.
pub fn load_atom(label: &str, source: &str) -> Result<AtomDescription, CliError> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| CliError::Config(format!("{label}: cannot read atom file {source:?}: {e}")))?
    };
    AtomDescription::from_json_str(&text).map_err(|e| CliError::Config(format!("{label}: schema error at {e}")))
}

pub fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
    }
    Ok(Vec3(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Sweep {
    #[arg(long, allow_hyphen_values = true)]
    pub start: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: f64,
    #[arg(long, default_value_t = 41)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
}

impl Sweep {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(CliError::Config(format!(
                "sweep requires start < stop, got start = {}, stop = {}",
                self.start, self.stop
            )));
        }
        if self.points < 2 {
            return Err(CliError::Config(format!("sweep requires at least 2 points, got {}", self.points)));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return Err(CliError::Config("log spacing requires start > 0".into()));
        }
        Ok(())
    }

    /// Grid scaled by `unit`; the endpoints are hit exactly.
    pub fn grid(&self, unit: f64) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                let x = if i == n - 1 {
                    self.stop
                } else {
                    match self.spacing {
                        Spacing::Linear => self.start + t * (self.stop - self.start),
                        Spacing::Log => (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp(),
                    }
                };
                x * unit
            })
            .collect()
    }
}

/// The semantic content of a run, hashed into the table metadata.
///
/// Atom files are represented by their parsed content and the output
/// destination is left out, so the hash follows what is computed and how it
/// is displayed rather than where inputs live.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub atoms: Vec<(String, AtomDescription)>,
    pub params: Value,
    pub common: Common,
}

impl RunConfig {
    pub fn new(command: &str, params: &impl Serialize, common: &Common) -> Self {
        Self {
            command: command.to_string(),
            atoms: Vec::new(),
            params: serde_json::to_value(params).expect("parameters serialize"),
            common: common.clone(),
        }
    }

    pub fn with_atom(mut self, label: &str, atom: &AtomDescription) -> Self {
        self.atoms.push((label.to_string(), atom.clone()));
        self
    }

    /// SHA-256 over the canonical JSON (sorted object keys, shortest float repr).
    pub fn hash(&self) -> String {
        let value = serde_json::to_value(self).expect("config serializes");
        let canonical = serde_json::to_string(&value).expect("config serializes");
        Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}
