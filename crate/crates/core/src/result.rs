use std::fmt;

use serde::{Deserialize, Serialize};

/// Distance regime a computed value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Near,
    Intermediate,
    Far,
    Thermal,
    AcceleratedThermal,
    AcceleratedBeyond,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Near => "near",
            Regime::Intermediate => "intermediate",
            Regime::Far => "far",
            Regime::Thermal => "thermal",
            Regime::AcceleratedThermal => "accelerated-thermal",
            Regime::AcceleratedBeyond => "accelerated-beyond",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An energy in natural units with its error estimate and regime tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub regime: Regime,
    pub notes: String,
}

impl EnergyResult {
    pub fn new(value: f64, abs_error_estimate: f64, regime: Regime) -> Self {
        Self { value, abs_error_estimate: abs_error_estimate.abs(), regime, notes: String::new() }
    }

    pub fn exact(value: f64, regime: Regime) -> Self {
        Self::new(value, 0.0, regime)
    }

    pub fn with_note(mut self, note: impl AsRef<str>) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(note.as_ref());
        self
    }
}
