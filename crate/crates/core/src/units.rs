//! Unit systems and conversions.
//!
//! Internally everything lives in natural units, ħ = c = k_B = 1, with a
//! chosen length unit. An energy E is stored as the wavenumber E/ħc, a
//! temperature T as k_B·T/ħc, an acceleration a as a/c². SI is accepted
//! only as an output target.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// CODATA 2018 exact and recommended values, SI.
pub mod codata {
    pub const HBAR: f64 = 1.054_571_817e-34;
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    pub const BOLTZMANN: f64 = 1.380_649e-23;
    pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
    pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;

    /// Hartree energy, derived as ħcα/a₀ so the constant set is self-consistent.
    pub fn hartree() -> f64 {
        HBAR * SPEED_OF_LIGHT * FINE_STRUCTURE / BOHR_RADIUS
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuantityKind {
    Length,
    Energy,
    Temperature,
    Acceleration,
    PolarizabilityVolume,
}

impl FromStr for QuantityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "length" => Ok(Self::Length),
            "energy" => Ok(Self::Energy),
            "temperature" => Ok(Self::Temperature),
            "acceleration" => Ok(Self::Acceleration),
            "polarizability-volume" | "volume" => Ok(Self::PolarizabilityVolume),
            other => Err(Error::Units(format!("unknown quantity kind '{other}'"))),
        }
    }
}

/// A unit system.
///
/// `Natural` carries the length unit in metres; the default is the Bohr
/// radius, which makes atomic data easy to enter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "id")]
pub enum UnitSystem {
    Natural { length_unit_m: f64 },
    Atomic,
    SiOutputOnly,
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem::natural_bohr()
    }
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitSystem::Natural { length_unit_m } => write!(f, "natural(L = {length_unit_m:e} m)"),
            UnitSystem::Atomic => f.write_str("atomic"),
            UnitSystem::SiOutputOnly => f.write_str("si"),
        }
    }
}

impl UnitSystem {
    pub fn natural_bohr() -> Self {
        UnitSystem::Natural { length_unit_m: codata::BOHR_RADIUS }
    }

    /// Size of one unit of `kind` in this system, expressed in SI.
    pub fn si_factor(&self, kind: QuantityKind) -> f64 {
        use codata::*;
        match *self {
            UnitSystem::Natural { length_unit_m: l } => match kind {
                QuantityKind::Length => l,
                QuantityKind::Energy => HBAR * SPEED_OF_LIGHT / l,
                QuantityKind::Temperature => HBAR * SPEED_OF_LIGHT / (l * BOLTZMANN),
                QuantityKind::Acceleration => SPEED_OF_LIGHT * SPEED_OF_LIGHT / l,
                QuantityKind::PolarizabilityVolume => l * l * l,
            },
            UnitSystem::Atomic => {
                let eh = hartree();
                match kind {
                    QuantityKind::Length => BOHR_RADIUS,
                    QuantityKind::Energy => eh,
                    QuantityKind::Temperature => eh / BOLTZMANN,
                    QuantityKind::Acceleration => BOHR_RADIUS * (eh / HBAR) * (eh / HBAR),
                    QuantityKind::PolarizabilityVolume => BOHR_RADIUS.powi(3),
                }
            }
            UnitSystem::SiOutputOnly => 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if let UnitSystem::Natural { length_unit_m } = *self {
            if !(length_unit_m.is_finite() && length_unit_m > 0.0) {
                return Err(Error::Units(format!("natural length unit must be positive, got {length_unit_m}")));
            }
        }
        Ok(())
    }
}

/// Convert `value` of the given kind from one system to another.
///
/// SI may only appear as the target.
pub fn convert_units(value: f64, kind: QuantityKind, from: UnitSystem, to: UnitSystem) -> Result<f64> {
    if from == UnitSystem::SiOutputOnly {
        return Err(Error::Units("SI is an output-only format and cannot be converted into an internal system".into()));
    }
    from.validate()?;
    to.validate()?;
    if from == to || value == 0.0 {
        return Ok(value);
    }
    Ok(value * from.si_factor(kind) / to.si_factor(kind))
}

/// String-keyed variant used by front ends.
pub fn convert_units_named(value: f64, kind: &str, from: UnitSystem, to: UnitSystem) -> Result<f64> {
    convert_units(value, kind.parse()?, from, to)
}
