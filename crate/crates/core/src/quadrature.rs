//! Adaptive integration over the semi-infinite interval [0, ∞).
//!
//! The half line is mapped onto [0, 1) through u = L·t/(1 − t), where L is
//! a characteristic scale of the integrand, and the image is integrated by
//! globally adaptive bisection with a 7/15-point Gauss–Kronrod pair on every
//! panel. The Kronrod nodes are interior, so integrable endpoint behaviour
//! at u = 0 and the t → 1 end is never evaluated directly.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-30, max_subdivisions: 2000 }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::InvalidInput(format!("rel_tol must lie in (0, 1e-2], got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidInput("abs_tol must be non-negative".into()));
        }
        if self.max_subdivisions < 10 {
            return Err(Error::InvalidInput("max_subdivisions must be at least 10".into()));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64, evals: &mut usize) -> Result<Panel>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut resabs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    *evals += 15;
    let mean = 0.5 * res_k;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let error = rescale_error((res_k - res_g) * half, resabs * half.abs(), resasc * half.abs());
    Ok(Panel { a, b, value, error })
}

/// Globally adaptive integration of `g` over [0, 1] starting from the given
/// interior breakpoints.
fn adaptive_unit<F>(g: F, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> Result<f64>,
{
    adaptive_unit_panels(g, breakpoints, spec).map(|(r, _)| r)
}

fn adaptive_unit_panels<F>(g: F, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<(IntegralResult, Vec<Panel>)>
where
    F: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|t| t.is_finite() && *t > 0.0 && *t < 1.0).collect();
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-14);

    let mut evals = 0;
    let mut heap = BinaryHeap::new();
    for w in cuts.windows(2) {
        heap.push(gauss_kronrod(&g, w[0], w[1], &mut evals)?);
    }
    let mut panels = heap.len();
    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= spec.target(value) {
            let result = IntegralResult { value, error_estimate: error, evaluations: evals };
            return Ok((result, heap.into_vec()));
        }
        let worst = *heap.peek().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if panels >= spec.max_subdivisions || mid <= worst.a || mid >= worst.b {
            return Err(Error::Convergence { estimate: value, error, subdivisions: panels });
        }
        heap.pop();
        heap.push(gauss_kronrod(&g, worst.a, mid, &mut evals)?);
        heap.push(gauss_kronrod(&g, mid, worst.b, &mut evals)?);
        panels += 1;
    }
}

fn checked<F: Fn(f64) -> f64>(f: &F, u: f64) -> Result<f64> {
    let v = f(u);
    if v.is_nan() || v.is_infinite() {
        return Err(Error::IntegrandDomain { at: u });
    }
    Ok(v)
}

/// ∫₀^∞ f(u) du with mapping scale `scale` and additional characteristic
/// scales at which initial panel boundaries are placed.
fn mapped_breakpoints(scale: f64, hints: &[f64]) -> Vec<f64> {
    hints
        .iter()
        .filter(|h| h.is_finite() && **h > 0.0)
        .flat_map(|&h| [0.1 * h, h, 10.0 * h])
        .map(|u| u / (u + scale))
        .collect()
}

fn mapped<F: Fn(f64) -> f64>(f: &F, scale: f64, t: f64) -> Result<f64> {
    let one_minus = 1.0 - t;
    let u = scale * t / one_minus;
    let v = checked(f, u)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    Ok(v * scale / (one_minus * one_minus))
}

/// A fixed set of nodes and weights on [0, ∞).
///
/// Built by adaptively integrating a reference integrand and keeping the
/// final Kronrod nodes. Applying the rule to a family of nearby integrands
/// gives values that vary smoothly with the family parameter, which is what
/// numerical differentiation of the result needs.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub reference: IntegralResult,
}

impl FixedRule {
    pub fn semi_infinite<F>(f: F, scale: f64, hints: &[f64], spec: &QuadratureSpec) -> Result<Self>
    where
        F: Fn(f64) -> f64,
    {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::Domain(format!("mapping scale must be positive, got {scale}")));
        }
        let (reference, mut panels) =
            adaptive_unit_panels(|t| mapped(&f, scale, t), &mapped_breakpoints(scale, hints), spec)?;
        panels.sort_by(|p, q| p.a.total_cmp(&q.a));
        let mut nodes = Vec::with_capacity(15 * panels.len());
        let mut weights = Vec::with_capacity(15 * panels.len());
        let mut push = |t: f64, w: f64| {
            let one_minus = 1.0 - t;
            nodes.push(scale * t / one_minus);
            weights.push(w * scale / (one_minus * one_minus));
        };
        for p in &panels {
            let center = 0.5 * (p.a + p.b);
            let half = 0.5 * (p.b - p.a);
            push(center, half * WGK[7]);
            for j in 0..7 {
                push(center - half * XGK[j], half * WGK[j]);
                push(center + half * XGK[j], half * WGK[j]);
            }
        }
        Ok(FixedRule { nodes, weights, reference })
    }

    pub fn apply(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&u, &w)| w * f(u)).sum()
    }
}

pub fn integrate_semi_infinite_scaled<F>(
    f: F,
    scale: f64,
    hints: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::Domain(format!("mapping scale must be positive, got {scale}")));
    }
    adaptive_unit(|t| mapped(&f, scale, t), &mapped_breakpoints(scale, hints), spec)
}

/// ∫₀^∞ f(u) du.
pub fn integrate_semi_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_scaled(f, 1.0, &[], spec)
}

/// ∫₀^∞ g(u)·e^{−s·u} du with nodes placed on the scale 1/s.
pub fn integrate_exp_weighted<G>(g: G, decay: f64, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    G: Fn(f64) -> f64,
{
    integrate_exp_weighted_hinted(g, decay, &[], spec)
}

/// As [`integrate_exp_weighted`], with extra characteristic scales of `g`.
pub fn integrate_exp_weighted_hinted<G>(
    g: G,
    decay: f64,
    hints: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegralResult>
where
    G: Fn(f64) -> f64,
{
    if !(decay.is_finite() && decay > 0.0) {
        return Err(Error::Domain(format!("decay rate must be positive, got {decay}")));
    }
    integrate_semi_infinite_scaled(
        |u| {
            let w = (-decay * u).exp();
            if w == 0.0 {
                0.0
            } else {
                g(u) * w
            }
        },
        1.0 / decay,
        hints,
        spec,
    )
}
