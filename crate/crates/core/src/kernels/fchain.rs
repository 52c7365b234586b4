//! The operator chain F^α_ij F^β_jk F^γ_ki applied to a scalar function of
//! the three triangle side vectors, with F_mn = −δ_mn∇² + ∇_m∇_n.
//!
//! Derivatives are taken by central differences on a tensor-product
//! stencil and Richardson-extrapolated in h². Each side vector carries a
//! set of sample points and, per extrapolation level, a set of weight
//! vectors paired with basis tensors; the chain is then
//! Σ Tr(E₁E₂E₃) Σ w₁w₂w₃ f over all component triples.

use serde::{Deserialize, Serialize};

use super::Tensor3;
use crate::geometry::{TriangleGeometry, Vec3};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffSpec {
    /// Finest finite-difference step relative to the local length scale;
    /// coarser levels grow by a factor 1.5 each.
    pub base_step: f64,
    pub richardson_levels: usize,
}

impl Default for DiffSpec {
    fn default() -> Self {
        DiffSpec { base_step: 0.06, richardson_levels: 4 }
    }
}

impl DiffSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.base_step > 1e-6 && self.base_step < 0.1) {
            return Err(Error::InvalidInput(format!("base_step must lie in (1e-6, 0.1), got {}", self.base_step)));
        }
        if !(1..=6).contains(&self.richardson_levels) {
            return Err(Error::InvalidInput(format!(
                "richardson_levels must lie in 1..=6, got {}",
                self.richardson_levels
            )));
        }
        if self.coarse_step() > MAX_COARSE_STEP {
            return Err(Error::InvalidInput(format!(
                "coarsest step {} exceeds {MAX_COARSE_STEP} of the local length",
                self.coarse_step()
            )));
        }
        Ok(())
    }

    fn coarse_step(&self) -> f64 {
        self.base_step * STEP_RATIO.powi(self.richardson_levels as i32 - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FChainResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Step ratio between successive extrapolation levels.
const STEP_RATIO: f64 = 1.5;
/// Largest coarse-level step relative to the local length.
const MAX_COARSE_STEP: f64 = 0.5;

struct Axis<S> {
    samples: Vec<S>,
    basis: Vec<Tensor3>,
    /// weights[level][component][sample]
    weights: Vec<Vec<Vec<f64>>>,
}

/// Richardson tableau over levels whose steps shrink by STEP_RATIO, error
/// series in h².
/// Input and output are per-level weight sets; output level ℓ is the
/// diagonal entry R[ℓ][ℓ].
fn richardson(raw: Vec<Vec<Vec<f64>>>) -> Vec<Vec<Vec<f64>>> {
    let ratio2 = STEP_RATIO * STEP_RATIO;
    let levels = raw.len();
    let mut table: Vec<Vec<Vec<Vec<f64>>>> = Vec::with_capacity(levels);
    for l in 0..levels {
        let mut row = vec![raw[l].clone()];
        for j in 1..=l {
            let f = ratio2.powi(j as i32);
            let prev = &table[l - 1][j - 1];
            let cur = &row[j - 1];
            let next = cur
                .iter()
                .zip(prev)
                .map(|(c, p)| c.iter().zip(p).map(|(c, p)| (f * c - p) / (f - 1.0)).collect())
                .collect();
            row.push(next);
        }
        table.push(row);
    }
    table.into_iter().enumerate().map(|(l, mut row)| row.swap_remove(l)).collect()
}

fn radial_axis(x: f64, dir: Vec3, h0: f64, levels: usize) -> Axis<f64> {
    let n = 1 + 2 * levels;
    let mut samples = vec![x];
    let mut raw = Vec::with_capacity(levels);
    for l in 0..levels {
        let h = h0 / STEP_RATIO.powi(l as i32);
        samples.push(x + h);
        samples.push(x - h);
        let (ip, im) = (1 + 2 * l, 2 + 2 * l);
        let mut d1 = vec![0.0; n];
        let mut d2 = vec![0.0; n];
        d1[ip] = 0.5 / h;
        d1[im] = -0.5 / h;
        d2[ip] = 1.0 / (h * h);
        d2[im] = 1.0 / (h * h);
        d2[0] = -2.0 / (h * h);
        let a: Vec<f64> = d2.iter().zip(&d1).map(|(s, f)| -(s + f / x)).collect();
        let b: Vec<f64> = d2.iter().zip(&d1).map(|(s, f)| s - f / x).collect();
        raw.push(vec![a, b]);
    }
    let u = dir * (1.0 / dir.norm());
    Axis { samples, basis: vec![Tensor3::identity(), Tensor3::outer(u.0, u.0)], weights: richardson(raw) }
}

fn vector_axis(v: Vec3, h0: f64, levels: usize) -> Axis<Vec3> {
    let e = |i: usize, h: f64| {
        let mut a = [0.0; 3];
        a[i] = h;
        Vec3(a)
    };
    let mut samples = vec![v];
    let mut plus_minus = Vec::new();
    let mut cross = Vec::new();
    for l in 0..levels {
        let h = h0 / STEP_RATIO.powi(l as i32);
        let mut pm = [[0usize; 2]; 3];
        for (i, slot) in pm.iter_mut().enumerate() {
            slot[0] = samples.len();
            samples.push(v + e(i, h));
            slot[1] = samples.len();
            samples.push(v - e(i, h));
        }
        let mut cr = [[[0usize; 4]; 3]; 3];
        for i in 0..3 {
            for j in (i + 1)..3 {
                for (s, (si, sj)) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)].into_iter().enumerate() {
                    cr[i][j][s] = samples.len();
                    samples.push(v + e(i, si * h) + e(j, sj * h));
                }
            }
        }
        plus_minus.push((h, pm));
        cross.push(cr);
    }
    let n = samples.len();
    let mut raw = Vec::with_capacity(levels);
    for l in 0..levels {
        let (h, pm) = plus_minus[l];
        let cr = cross[l];
        let hess = |i: usize, j: usize| -> Vec<f64> {
            let mut w = vec![0.0; n];
            let inv = 1.0 / (h * h);
            if i == j {
                w[pm[i][0]] += inv;
                w[pm[i][1]] += inv;
                w[0] -= 2.0 * inv;
            } else {
                let (a, b) = (i.min(j), i.max(j));
                let q = 0.25 * inv;
                w[cr[a][b][0]] += q;
                w[cr[a][b][1]] -= q;
                w[cr[a][b][2]] -= q;
                w[cr[a][b][3]] += q;
            }
            w
        };
        let lap: Vec<f64> = (0..n).map(|s| (0..3).map(|i| hess(i, i)[s]).sum()).collect();
        let mut comps = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                let mut w = hess(i, j);
                if i == j {
                    for (ws, ls) in w.iter_mut().zip(&lap) {
                        *ws -= ls;
                    }
                }
                comps.push(w);
            }
        }
        raw.push(comps);
    }
    let mut basis = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let mut t = Tensor3::default();
            t.0[i][j] = 1.0;
            basis.push(t);
        }
    }
    Axis { samples, basis, weights: richardson(raw) }
}

fn contract<S: Copy>(f: impl Fn(S, S, S) -> f64, axes: [&Axis<S>; 3], levels: usize) -> Result<FChainResult> {
    let [a, b, c] = axes;
    let (na, nb, nc) = (a.samples.len(), b.samples.len(), c.samples.len());
    let mut values = Vec::with_capacity(na * nb * nc);
    for &sa in &a.samples {
        for &sb in &b.samples {
            for &sc in &c.samples {
                let v = f(sa, sb, sc);
                if !v.is_finite() {
                    return Err(Error::Domain("function value is not finite on the difference stencil".into()));
                }
                values.push(v);
            }
        }
    }
    let abs_values: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    // Every component operator annihilates constants; removing the centre
    // value shrinks the terms being summed.
    let centre = values[0];
    let shifted: Vec<f64> = values.iter().map(|v| v - centre).collect();

    let mut traces = Vec::new();
    for (i, ea) in a.basis.iter().enumerate() {
        for (j, eb) in b.basis.iter().enumerate() {
            for (k, ec) in c.basis.iter().enumerate() {
                let t = ea.matmul(eb).matmul(ec).trace();
                if t != 0.0 {
                    traces.push((i, j, k, t));
                }
            }
        }
    }

    let (kb, kc) = (b.basis.len(), c.basis.len());
    let reduce = |vals: &[f64], l: usize, absolute: bool| -> f64 {
        let w = |x: f64| if absolute { x.abs() } else { x };
        let wc = &c.weights[l];
        let wb = &b.weights[l];
        let wa = &a.weights[l];
        let mut g = vec![0.0; na * nb * kc];
        for pq in 0..na * nb {
            let row = &vals[pq * nc..(pq + 1) * nc];
            for (k, wk) in wc.iter().enumerate() {
                g[pq * kc + k] = row.iter().zip(wk).map(|(v, x)| v * w(*x)).sum();
            }
        }
        let mut h = vec![0.0; na * kb * kc];
        for p in 0..na {
            for (j, wj) in wb.iter().enumerate() {
                for k in 0..kc {
                    let mut acc = 0.0;
                    for (q, x) in wj.iter().enumerate() {
                        acc += g[(p * nb + q) * kc + k] * w(*x);
                    }
                    h[(p * kb + j) * kc + k] = acc;
                }
            }
        }
        traces
            .iter()
            .map(|&(i, j, k, t)| {
                let s: f64 = wa[i].iter().enumerate().map(|(p, x)| w(*x) * h[(p * kb + j) * kc + k]).sum();
                w(t) * s
            })
            .sum()
    };

    let estimates: Vec<f64> = (0..levels).map(|l| reduce(&shifted, l, false)).collect();
    let noise = 16.0 * f64::EPSILON * reduce(&abs_values, levels - 1, true);
    let value = estimates[levels - 1];
    let evaluations = values.len();
    if levels == 1 {
        return Ok(FChainResult { value, error_estimate: noise, evaluations });
    }
    let last = (estimates[levels - 1] - estimates[levels - 2]).abs();
    if levels >= 3 {
        let before = (estimates[levels - 2] - estimates[levels - 3]).abs();
        if last > noise && last > 0.9 * before.max(noise) {
            return Err(Error::Differentiation { ratio: last / before.max(f64::MIN_POSITIVE) });
        }
    }
    Ok(FChainResult { value, error_estimate: last + noise, evaluations })
}

/// Applies the chain to f(α, β, γ) of the side vectors α = r_C − r_B,
/// β = r_C − r_A, γ = r_B − r_A.
pub fn apply_f_chain(
    f: impl Fn(Vec3, Vec3, Vec3) -> f64,
    geometry: &TriangleGeometry,
    spec: &DiffSpec,
) -> Result<FChainResult> {
    spec.validate()?;
    let levels = spec.richardson_levels;
    let [va, vb, vc] = geometry.side_vectors();
    let axes = [va, vb, vc].map(|v| vector_axis(v, spec.coarse_step() * v.norm(), levels));
    contract(f, [&axes[0], &axes[1], &axes[2]], levels)
}

/// Applies the chain to a function of the side lengths only, f(a, b, c).
pub fn apply_f_chain_radial(
    f: impl Fn(f64, f64, f64) -> f64,
    geometry: &TriangleGeometry,
    spec: &DiffSpec,
) -> Result<FChainResult> {
    apply_f_chain_radial_capped(f, geometry, spec, None)
}

/// As [`apply_f_chain_radial`], with the step additionally bounded by
/// `base_step · max_length` so that oscillations on a scale shorter than
/// the sides are resolved.
pub fn apply_f_chain_radial_capped(
    f: impl Fn(f64, f64, f64) -> f64,
    geometry: &TriangleGeometry,
    spec: &DiffSpec,
    max_length: Option<f64>,
) -> Result<FChainResult> {
    spec.validate()?;
    if let Some(m) = max_length {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidInput(format!("step length cap must be positive, got {m}")));
        }
    }
    let levels = spec.richardson_levels;
    let [va, vb, vc] = geometry.side_vectors();
    let axes = [va, vb, vc].map(|v| {
        let x = v.norm();
        let len = max_length.map_or(x, |m| x.min(m));
        radial_axis(x, v, spec.coarse_step() * len, levels)
    });
    contract(f, [&axes[0], &axes[1], &axes[2]], levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri345() -> TriangleGeometry {
        TriangleGeometry::new(Vec3::ZERO, Vec3::new(3.0, 0.0, 0.0), Vec3::new(0.0, 4.0, 0.0)).unwrap()
    }

    #[test]
    fn equilateral_symbolic_value() {
        let g = TriangleGeometry::equilateral(1.0).unwrap();
        let want = -1264.0 / 243.0;
        let radial = apply_f_chain_radial(|a, b, c| 1.0 / (a * b * c * (a + b + c)), &g, &DiffSpec::default()).unwrap();
        assert!((radial.value - want).abs() < 1e-6 * want.abs(), "{radial:?}");
        let vector = apply_f_chain(
            |a, b, c| {
                let (a, b, c) = (a.norm(), b.norm(), c.norm());
                1.0 / (a * b * c * (a + b + c))
            },
            &g,
            &DiffSpec::default(),
        )
        .unwrap();
        assert!((vector.value - want).abs() < 1e-6 * want.abs(), "{vector:?}");
    }

    #[test]
    fn near_zone_equilateral() {
        let g = TriangleGeometry::equilateral(1.0).unwrap();
        let r = apply_f_chain_radial(|a, b, c| 1.0 / (a * b * c), &g, &DiffSpec::default()).unwrap();
        assert!((r.value + 33.0 / 8.0).abs() < 1e-6 * 33.0 / 8.0, "{r:?}");
    }

    #[test]
    fn right_triangle_symbolic_value() {
        let want = -4.400_827_331_961_591e-6;
        let f = |a: f64, b: f64, c: f64| 1.0 / (a * b * c * (a + b + c));
        let r = apply_f_chain_radial(f, &tri345(), &DiffSpec::default()).unwrap();
        assert!((r.value - want).abs() < 1e-6 * want.abs(), "{r:?}");
    }

    #[test]
    fn constant_gives_zero() {
        let g = tri345();
        let r = apply_f_chain(|_, _, _| 2.5, &g, &DiffSpec::default()).unwrap();
        assert!(r.value.abs() < 1e-8, "{r:?}");
        let r = apply_f_chain_radial(|_, _, _| 2.5, &g, &DiffSpec::default()).unwrap();
        assert!(r.value.abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn separable_linear_factor_vanishes() {
        // F acting on a function linear in one side vector is zero.
        let g = tri345();
        let r = apply_f_chain(|a, b, c| a.x() * (b.norm() + c.norm()), &g, &DiffSpec::default()).unwrap();
        assert!(r.value.abs() < 1e-7, "{r:?}");
    }

    #[test]
    fn bad_specs_rejected() {
        let g = tri345();
        let f = |_: f64, _: f64, _: f64| 1.0;
        for spec in [
            DiffSpec { base_step: 0.0, richardson_levels: 3 },
            DiffSpec { base_step: 0.1, richardson_levels: 3 },
            DiffSpec { base_step: 0.05, richardson_levels: 0 },
            DiffSpec { base_step: 0.09, richardson_levels: 6 },
        ] {
            assert!(apply_f_chain_radial(f, &g, &spec).is_err());
        }
        assert!(apply_f_chain_radial_capped(f, &g, &DiffSpec::default(), Some(-1.0)).is_err());
    }

    #[test]
    fn non_finite_values_rejected() {
        let g = tri345();
        let r = apply_f_chain_radial(|a, _, _| if a > 5.0 { f64::NAN } else { 1.0 }, &g, &DiffSpec::default());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn rough_function_fails_to_converge() {
        let g = tri345();
        let r = apply_f_chain_radial(
            |a, b, c| (1e4 * a).sin() * (1e4 * b).sin() * (1e4 * c).sin(),
            &g,
            &DiffSpec::default(),
        );
        assert!(matches!(r, Err(Error::Differentiation { .. })), "{r:?}");
    }
}
