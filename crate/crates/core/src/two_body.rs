//! Dispersion energy between two ground-state atoms.
//!
//! The full result for any separation is
//!
//! ΔE(r) = −(1/π) ∫₀^∞ du α_A(iu) α_B(iu) u⁶ e^{−2ur}
//!         × (1/u²r² + 2/u³r³ + 5/u⁴r⁴ + 6/u⁵r⁵ + 3/u⁶r⁶),
//!
//! evaluated here in the dimensionless variable x = ur. A second,
//! independent pipeline rotates the field-correlation mode integral onto
//! the imaginary axis and contracts G_ij(iu) numerically.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::kernels::g_tensor_complex;
use crate::polarizability::{PolarizabilityKind, PolarizabilityModel};
use crate::quadrature::{integrate_exp_weighted_hinted, integrate_semi_infinite_scaled, QuadratureSpec};
use crate::result::{EnergyResult, Regime};
use crate::{Error, Result, Vec3};

/// Near/far thresholds in units of the shortest transition wavelength.
pub const NEAR_ZONE_FRACTION: f64 = 1e-2;
pub const FAR_ZONE_MULTIPLE: f64 = 1e2;
/// r beyond this multiple of the thermal length counts as thermal.
pub const THERMAL_MULTIPLE: f64 = 10.0;
/// Largest accepted relative deviation between the two energy routes.
pub const CORRELATION_ROUTE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub model_a: PolarizabilityModel,
    pub model_b: PolarizabilityModel,
    pub kind_a: PolarizabilityKind,
    pub kind_b: PolarizabilityKind,
    pub r: f64,
}

impl PairSpec {
    pub fn new(
        model_a: PolarizabilityModel,
        kind_a: PolarizabilityKind,
        model_b: PolarizabilityModel,
        kind_b: PolarizabilityKind,
        r: f64,
    ) -> Result<Self> {
        let spec = Self { model_a, model_b, kind_a, kind_b, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn electric(model_a: PolarizabilityModel, model_b: PolarizabilityModel, r: f64) -> Result<Self> {
        Self::new(model_a, PolarizabilityKind::Electric, model_b, PolarizabilityKind::Electric, r)
    }

    pub fn validate(&self) -> Result<()> {
        check_separation(self.r)?;
        if self.kind_a == PolarizabilityKind::Magnetic && self.kind_b == PolarizabilityKind::Magnetic {
            return Err(Error::InvalidInput("at most one atom of a pair may be magnetic".into()));
        }
        Ok(())
    }

    fn require_electric(&self) -> Result<()> {
        self.validate()?;
        if self.kind_a != PolarizabilityKind::Electric || self.kind_b != PolarizabilityKind::Electric {
            return Err(Error::InvalidInput("this route needs two electric atoms".into()));
        }
        Ok(())
    }

    pub fn swapped(&self) -> Self {
        Self {
            model_a: self.model_b.clone(),
            model_b: self.model_a.clone(),
            kind_a: self.kind_b,
            kind_b: self.kind_a,
            r: self.r,
        }
    }

    /// Dimensionless breakpoints x = r·k for every transition of both atoms.
    fn hints(&self) -> Vec<f64> {
        self.model_a.transitions.iter().chain(&self.model_b.transitions).map(|t| t.k * self.r).collect()
    }
}

pub(crate) fn check_separation(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidInput(format!("separation must be positive, got {r}")));
    }
    Ok(())
}

/// (x⁴ + 2x³ + 5x² + 6x + 3), the retardation polynomial of the full result.
#[inline]
pub(crate) fn retardation_polynomial(x: f64) -> f64 {
    (((x + 2.0) * x + 5.0) * x + 6.0) * x + 3.0
}

pub fn cp_full(pair: &PairSpec, quad: &QuadratureSpec) -> Result<EnergyResult> {
    pair.require_electric()?;
    let r = pair.r;
    let integral = integrate_exp_weighted_hinted(
        |x| {
            let u = x / r;
            pair.model_a.alpha_imag_unchecked(u) * pair.model_b.alpha_imag_unchecked(u) * retardation_polynomial(x)
        },
        2.0,
        &pair.hints(),
        quad,
    )?;
    let prefactor = -1.0 / (PI * r.powi(7));
    let report = classify_regime(&pair.model_a, &pair.model_b, r, None)?;
    let mut result = EnergyResult::new(prefactor * integral.value, prefactor * integral.error_estimate, report.regime);
    if let Some(note) = report.note {
        result = result.with_note(note);
    }
    Ok(result)
}

/// Non-retarded London limit −(2/3) Σ_ps mu2_A,p mu2_B,s / (k_p + k_s) / r⁶.
pub fn london_near(model_a: &PolarizabilityModel, model_b: &PolarizabilityModel, r: f64) -> Result<f64> {
    check_separation(r)?;
    if !model_a.is_transition_based() || !model_b.is_transition_based() {
        return Err(Error::InsufficientData(
            "the near-zone limit needs transition energies and dipole strengths".into(),
        ));
    }
    let mut sum = 0.0;
    for p in &model_a.transitions {
        for s in &model_b.transitions {
            sum += p.mu2 * s.mu2 / (p.k + s.k);
        }
    }
    Ok(-2.0 / 3.0 * sum / r.powi(6))
}

/// Retarded far-zone limit −23 α_A α_B / (4π r⁷).
pub fn cp_far(alpha_a: f64, alpha_b: f64, r: f64) -> Result<f64> {
    check_separation(r)?;
    Ok(-23.0 * alpha_a * alpha_b / (4.0 * PI * r.powi(7)))
}

/// Far-zone electric–magnetic energy +7 α_E α_M / (4π r⁷).
pub fn cp_far_electric_magnetic(alpha_e: f64, alpha_m: f64, r: f64) -> Result<f64> {
    check_separation(r)?;
    Ok(7.0 * alpha_e * alpha_m / (4.0 * PI * r.powi(7)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRouteResult {
    pub energy: EnergyResult,
    pub reference: f64,
    pub relative_deviation: f64,
}

/// Energy of the dipoles induced by the correlated vacuum field,
/// −(1/π)∫dk k⁶ α_A(k)α_B(k) Re G_ij Im G_ij, rotated to k = iu.
pub fn cp_via_correlation(pair: &PairSpec, quad: &QuadratureSpec) -> Result<CorrelationRouteResult> {
    pair.require_electric()?;
    let r = pair.r;
    let integral = integrate_semi_infinite_scaled(
        |x| {
            let alphas = pair.model_a.alpha_imag_unchecked(x / r) * pair.model_b.alpha_imag_unchecked(x / r);
            if alphas == 0.0 {
                return 0.0;
            }
            let k = Complex64::new(0.0, x);
            let g = match g_tensor_complex(k, Vec3::Z) {
                Ok(g) => g,
                Err(_) => return f64::NAN,
            };
            (k.powi(6) * g.double_dot(&g)).re * alphas
        },
        0.5,
        &pair.hints(),
        quad,
    )?;
    let prefactor = -1.0 / (2.0 * PI * r.powi(7));
    let value = prefactor * integral.value;
    let reference = cp_full(pair, quad)?;
    let relative_deviation = if value == reference.value {
        0.0
    } else {
        (value - reference.value).abs() / reference.value.abs().max(value.abs())
    };
    if relative_deviation > CORRELATION_ROUTE_TOLERANCE {
        return Err(Error::ConsistencyViolation { relative: relative_deviation });
    }
    let mut energy = EnergyResult::new(value, prefactor * integral.error_estimate, reference.regime);
    energy.notes = reference.notes.clone();
    Ok(CorrelationRouteResult { energy, reference: reference.value, relative_deviation })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub regime: Regime,
    pub lambda_min: Option<f64>,
    pub thermal_length: Option<f64>,
    pub thermal: bool,
    pub scaling_law: Option<String>,
    pub note: Option<String>,
}

/// Places r relative to the shortest transition wavelength and, for a
/// given temperature, the thermal length 1/(2πT).
pub fn classify_regime(
    model_a: &PolarizabilityModel,
    model_b: &PolarizabilityModel,
    r: f64,
    temperature: Option<f64>,
) -> Result<RegimeReport> {
    check_separation(r)?;
    let max_k = [model_a.max_k(), model_b.max_k()].into_iter().flatten().reduce(f64::max);
    let lambda_min = max_k.map(|k| 2.0 * PI / k);
    let (mut regime, mut note) = match lambda_min {
        Some(l) if r < NEAR_ZONE_FRACTION * l => (Regime::Near, None),
        Some(l) if r > FAR_ZONE_MULTIPLE * l => (Regime::Far, None),
        Some(_) => (Regime::Intermediate, None),
        None => (Regime::Far, Some("static polarizabilities only; far zone assumed".to_string())),
    };
    let mut report =
        RegimeReport { regime, lambda_min, thermal_length: None, thermal: false, scaling_law: None, note: None };
    if let Some(t) = temperature {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidInput(format!("temperature must be non-negative, got {t}")));
        }
        if t > 0.0 {
            let rho = 1.0 / (2.0 * PI * t);
            report.thermal_length = Some(rho);
            if r > THERMAL_MULTIPLE * rho {
                report.thermal = true;
                report.scaling_law = Some("∝ T·r⁻⁶".to_string());
                regime = Regime::Thermal;
                note = Some("beyond the thermal length the energy scales as T·r⁻⁶; no coefficient is computed".into());
            }
        }
    }
    report.regime = regime;
    report.note = note;
    Ok(report)
}
