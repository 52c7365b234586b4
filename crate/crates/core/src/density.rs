//! Renormalized vacuum field energy densities around a ground-state atom
//! and near a conducting plate, and the interaction energy of a second
//! atom placed in that density.
//!
//! Around an atom, after rotating the mode integral onto the imaginary axis:
//!
//! ⟨E²⟩(r) = (2/π r⁷) ∫dx α(ix/r) e^{−2x}(x⁴ + 2x³ + 5x² + 6x + 3)
//! ⟨B²⟩(r) = −(2/π r⁷) ∫dx α(ix/r) e^{−2x}(x⁴ + 2x³ + x²)
//!
//! and the energy densities are ⟨·⟩/8π.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::polarizability::{PolarizabilityKind, PolarizabilityModel};
use crate::quadrature::{integrate_exp_weighted_hinted, QuadratureSpec};
use crate::result::EnergyResult;
use crate::two_body::{check_separation, classify_regime, retardation_polynomial, FAR_ZONE_MULTIPLE};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Electric,
    Magnetic,
}

impl std::str::FromStr for FieldKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "electric" | "e" => Ok(FieldKind::Electric),
            "magnetic" | "b" | "m" => Ok(FieldKind::Magnetic),
            other => Err(Error::InvalidInput(format!("unknown field kind {other:?}"))),
        }
    }
}

fn magnetic_polynomial(x: f64) -> f64 {
    ((x + 2.0) * x + 1.0) * x * x
}

/// ⟨E²⟩_ren or ⟨B²⟩_ren at distance r from the atom.
pub fn mean_square_field(model: &PolarizabilityModel, r: f64, field: FieldKind, quad: &QuadratureSpec) -> Result<f64> {
    check_separation(r)?;
    let hints: Vec<f64> = model.transitions.iter().map(|t| t.k * r).collect();
    let (sign, poly): (f64, fn(f64) -> f64) = match field {
        FieldKind::Electric => (1.0, retardation_polynomial),
        FieldKind::Magnetic => (-1.0, magnetic_polynomial),
    };
    let integral = integrate_exp_weighted_hinted(|x| model.alpha_imag_unchecked(x / r) * poly(x), 2.0, &hints, quad)?;
    Ok(sign * 2.0 / (PI * r.powi(7)) * integral.value)
}

pub fn density_around_atom(
    model: &PolarizabilityModel,
    r: f64,
    field: FieldKind,
    quad: &QuadratureSpec,
) -> Result<f64> {
    Ok(mean_square_field(model, r, field, quad)? / (8.0 * PI))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRouteResult {
    pub energy: EnergyResult,
    pub far_zone_warning: bool,
}

/// Energy −(α/2)⟨E²⟩ (or −(α/2)⟨B²⟩) of a probe atom with static
/// polarizability α in the field dressed by the source atom.
pub fn density_route_energy(
    source: &PolarizabilityModel,
    probe_alpha: f64,
    probe_kind: PolarizabilityKind,
    r: f64,
    quad: &QuadratureSpec,
) -> Result<DensityRouteResult> {
    if !(probe_alpha.is_finite() && probe_alpha >= 0.0) {
        return Err(Error::InvalidInput(format!("probe polarizability must be non-negative, got {probe_alpha}")));
    }
    let field = match probe_kind {
        PolarizabilityKind::Electric => FieldKind::Electric,
        PolarizabilityKind::Magnetic => FieldKind::Magnetic,
    };
    let value = -0.5 * probe_alpha * mean_square_field(source, r, field, quad)?;
    let report = classify_regime(source, source, r, None)?;
    let far_zone_warning = source.lambda_min().is_some_and(|l| r <= FAR_ZONE_MULTIPLE * l);
    let mut energy = EnergyResult::new(value, value.abs() * quad.rel_tol, report.regime);
    if far_zone_warning {
        energy = energy.with_note("density route is only valid in the far zone");
    }
    if let Some(note) = report.note {
        energy = energy.with_note(note);
    }
    Ok(DensityRouteResult { energy, far_zone_warning })
}

/// Renormalized density at height z above a perfect conductor:
/// ±3/(32π² z⁴), positive for the electric field.
pub fn plate_density(z: f64, field: FieldKind) -> Result<f64> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::Domain(format!("plate density needs z > 0 (it diverges at the surface), got {z}")));
    }
    let magnitude = 3.0 / (32.0 * PI * PI * z.powi(4));
    Ok(match field {
        FieldKind::Electric => magnitude,
        FieldKind::Magnetic => -magnitude,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    RotatedSingleIntegral,
    FarClosedForm,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::RotatedSingleIntegral => "rotated-single-integral",
            Representation::FarClosedForm => "far-closed-form",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub radii: Vec<f64>,
    pub electric: Vec<f64>,
    pub magnetic: Vec<f64>,
    pub representation: Representation,
}

impl DensityProfile {
    pub fn compute(model: &PolarizabilityModel, radii: &[f64], quad: &QuadratureSpec) -> Result<Self> {
        let mut electric = Vec::with_capacity(radii.len());
        let mut magnetic = Vec::with_capacity(radii.len());
        for &r in radii {
            electric.push(density_around_atom(model, r, FieldKind::Electric, quad)?);
            magnetic.push(density_around_atom(model, r, FieldKind::Magnetic, quad)?);
        }
        Ok(Self { radii: radii.to_vec(), electric, magnetic, representation: Representation::RotatedSingleIntegral })
    }

    /// 23α/(16π²r⁷) and −7α/(16π²r⁷).
    pub fn far_closed_form(alpha: f64, radii: &[f64]) -> Result<Self> {
        for &r in radii {
            check_separation(r)?;
        }
        let scale = |r: f64| alpha / (16.0 * PI * PI * r.powi(7));
        Ok(Self {
            radii: radii.to_vec(),
            electric: radii.iter().map(|&r| 23.0 * scale(r)).collect(),
            magnetic: radii.iter().map(|&r| -7.0 * scale(r)).collect(),
            representation: Representation::FarClosedForm,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,electric_density,magnetic_density,representation\n");
        for ((r, e), m) in self.radii.iter().zip(&self.electric).zip(&self.magnetic) {
            let _ = writeln!(out, "{r:.16e},{e:.16e},{m:.16e},{}", self.representation.as_str());
        }
        out
    }
}
