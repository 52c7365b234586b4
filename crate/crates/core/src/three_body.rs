//! Non-additive three-body dispersion energy.
//!
//! ΔE = −(1/π) F^α_ij F^β_jk F^γ_ki [ (1/αβγ) ∫₀^∞ du α_A(iu)α_B(iu)α_C(iu) e^{−u(α+β+γ)} ],
//!
//! with each F acting on its own side vector. In the static limit the
//! integral is α_Aα_Bα_C/(α+β+γ).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::kernels::{apply_f_chain_radial, apply_f_chain_radial_capped, DiffSpec, FChainResult};
use crate::polarizability::{PolarizabilityModel, TwoLevelAtom};
use crate::quadrature::{FixedRule, QuadratureSpec};
use crate::result::{EnergyResult, Regime};
use crate::two_body::{FAR_ZONE_MULTIPLE, NEAR_ZONE_FRACTION};
use crate::{Result, TriangleGeometry};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleSpec {
    pub model_a: PolarizabilityModel,
    pub model_b: PolarizabilityModel,
    pub model_c: PolarizabilityModel,
    pub geometry: TriangleGeometry,
}

impl TripleSpec {
    pub fn new(
        model_a: PolarizabilityModel,
        model_b: PolarizabilityModel,
        model_c: PolarizabilityModel,
        geometry: TriangleGeometry,
    ) -> Self {
        Self { model_a, model_b, model_c, geometry }
    }
}

/// Regime of a triangle from its longest and shortest sides.
fn triangle_regime(models: &[&PolarizabilityModel], geometry: &TriangleGeometry) -> Regime {
    let max_k = models.iter().filter_map(|m| m.max_k()).reduce(f64::max);
    let Some(k) = max_k else { return Regime::Far };
    let lambda = 2.0 * PI / k;
    let sides = [geometry.alpha, geometry.beta, geometry.gamma];
    let longest = sides.iter().copied().fold(0.0, f64::max);
    let shortest = sides.iter().copied().fold(f64::INFINITY, f64::min);
    if longest < NEAR_ZONE_FRACTION * lambda {
        Regime::Near
    } else if shortest > FAR_ZONE_MULTIPLE * lambda {
        Regime::Far
    } else {
        Regime::Intermediate
    }
}

/// I(s) = ∫ w(u) e^{−us} du on nodes frozen around the physical perimeter,
/// memoized per s at 10⁻¹² relative resolution.
struct PerimeterIntegral {
    nodes: Vec<f64>,
    coefficients: Vec<f64>,
    reference_error: f64,
    s0: f64,
    cache: Mutex<HashMap<i64, f64>>,
}

impl PerimeterIntegral {
    fn new(weight: impl Fn(f64) -> f64, hints: &[f64], s0: f64, quad: &QuadratureSpec) -> Result<Self> {
        // The stencil moves the perimeter by less than ±25 %; resolving both
        // ends keeps the frozen nodes accurate across it.
        let rule = FixedRule::semi_infinite(
            |u| weight(u) * ((-0.75 * s0 * u).exp() + (-1.25 * s0 * u).exp()),
            1.0 / s0,
            hints,
            quad,
        )?;
        let coefficients = rule.nodes.iter().zip(&rule.weights).map(|(&u, &w)| w * weight(u)).collect();
        let reference_error = rule.reference.error_estimate / rule.reference.value.abs().max(f64::MIN_POSITIVE);
        Ok(Self { nodes: rule.nodes, coefficients, reference_error, s0, cache: Mutex::new(HashMap::new()) })
    }

    fn at(&self, s: f64) -> f64 {
        let key = (s / self.s0 * 1e12).round() as i64;
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return *v;
        }
        let v = self.nodes.iter().zip(&self.coefficients).map(|(&u, &c)| c * (-u * s).exp()).sum();
        self.cache.lock().expect("cache lock").insert(key, v);
        v
    }
}

fn dispersion_chain(
    alpha_a: impl Fn(f64) -> f64,
    model_b: &PolarizabilityModel,
    model_c: &PolarizabilityModel,
    hints: &[f64],
    geometry: &TriangleGeometry,
    quad: &QuadratureSpec,
    diff: &DiffSpec,
) -> Result<(f64, f64)> {
    let weight = |u: f64| alpha_a(u) * model_b.alpha_imag_unchecked(u) * model_c.alpha_imag_unchecked(u);
    let integral = PerimeterIntegral::new(weight, hints, geometry.perimeter(), quad)?;
    let FChainResult { value, error_estimate, .. } =
        apply_f_chain_radial(|a, b, c| integral.at(a + b + c) / (a * b * c), geometry, diff)?;
    let energy = -value / PI;
    Ok((energy, error_estimate / PI + energy.abs() * integral.reference_error))
}

fn all_hints(models: &[&PolarizabilityModel]) -> Vec<f64> {
    models.iter().flat_map(|m| m.transitions.iter().map(|t| t.k)).collect()
}

pub fn three_body_full(spec: &TripleSpec, quad: &QuadratureSpec, diff: &DiffSpec) -> Result<EnergyResult> {
    let models = [&spec.model_a, &spec.model_b, &spec.model_c];
    let (value, error) = dispersion_chain(
        |u| spec.model_a.alpha_imag_unchecked(u),
        &spec.model_b,
        &spec.model_c,
        &all_hints(&models),
        &spec.geometry,
        quad,
        diff,
    )?;
    Ok(EnergyResult::new(value, error, triangle_regime(&models, &spec.geometry)))
}

/// Static-polarizability limit −(1/π) α_Aα_Bα_C F-chain[1/(αβγ(α+β+γ))].
pub fn three_body_far(alphas: [f64; 3], geometry: &TriangleGeometry, diff: &DiffSpec) -> Result<EnergyResult> {
    let product = alphas[0] * alphas[1] * alphas[2];
    let chain = apply_f_chain_radial(|a, b, c| 1.0 / (a * b * c * (a + b + c)), geometry, diff)?;
    Ok(EnergyResult::new(-product * chain.value / PI, product.abs() * chain.error_estimate / PI, Regime::Far))
}

/// Equilateral closed form +(2⁴·79/3⁵) α_Aα_Bα_C / (π r¹⁰).
pub fn three_body_equilateral_far(alphas: [f64; 3], r: f64) -> Result<f64> {
    crate::two_body::check_separation(r)?;
    Ok(1264.0 / 243.0 * alphas[0] * alphas[1] * alphas[2] / (PI * r.powi(10)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcitedThreeBodyResult {
    pub resonant_term: f64,
    pub dispersive_term: f64,
    pub total: EnergyResult,
}

pub const EXCITED_VALIDITY_NOTE: &str = "spontaneous decay of the excited atom neglected";

/// Three-body energy with atom A in its excited state.
///
/// The resonant part is −(|μ|²/3) α_B(k₀) α_C(k₀) times the F-chain of
/// (1/αβγ)[cos k₀(β−γ+α) + cos k₀(β−γ−α)]; the dispersive part is the
/// ground-state expression with α_A replaced by the excited-state
/// polarizability.
pub fn three_body_excited(
    atom_a: &TwoLevelAtom,
    model_b: &PolarizabilityModel,
    model_c: &PolarizabilityModel,
    geometry: &TriangleGeometry,
    quad: &QuadratureSpec,
    diff: &DiffSpec,
) -> Result<ExcitedThreeBodyResult> {
    let k0 = atom_a.k0;
    let alpha_b = model_b.alpha_real(k0)?;
    let alpha_c = model_c.alpha_real(k0)?;
    let ground = atom_a.ground_state_model();
    let mu2 = atom_a.dipole_sq();

    let (dispersive, dispersive_error) = dispersion_chain(
        |u| atom_a.alpha_excited_unchecked(u),
        model_b,
        model_c,
        &all_hints(&[&ground, model_b, model_c]),
        geometry,
        quad,
        diff,
    )?;

    let prefactor = -mu2 / 3.0 * alpha_b * alpha_c;
    let (resonant, resonant_error) = if prefactor == 0.0 {
        (0.0, 0.0)
    } else {
        let chain = apply_f_chain_radial_capped(
            |a, b, c| ((k0 * (b - c + a)).cos() + (k0 * (b - c - a)).cos()) / (a * b * c),
            geometry,
            diff,
            Some(1.0 / k0),
        )?;
        (prefactor * chain.value, prefactor.abs() * chain.error_estimate)
    };

    let regime = triangle_regime(&[&ground, model_b, model_c], geometry);
    let total = EnergyResult::new(resonant + dispersive, resonant_error + dispersive_error, regime)
        .with_note(EXCITED_VALIDITY_NOTE);
    Ok(ExcitedThreeBodyResult { resonant_term: resonant, dispersive_term: dispersive, total })
}
