//! Uniformly accelerated atoms.
//!
//! Atoms follow Rindler trajectories t = sinh(aτ)/a, x = cosh(aτ)/a with
//! proper acceleration a along x̂ and are separated by z along ẑ. The
//! acceleration introduces the length z_a = 1/a and the Unruh temperature
//! T_U = a/2π.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::resonance::BellPairSpec;
use crate::result::{EnergyResult, Regime};
use crate::{Error, Result, Vec3};

/// z beyond this multiple of z_a is the large-distance regime; below
/// z_a divided by it, the thermal-equivalent regime.
pub const ACCELERATION_REGIME_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcceleratedPair {
    pub a: f64,
    pub z: f64,
}

impl AcceleratedPair {
    pub fn new(a: f64, z: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidInput(format!("proper acceleration must be positive, got {a}")));
        }
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::InvalidInput(format!("separation must be positive, got {z}")));
        }
        Ok(Self { a, z })
    }

    pub fn z_a(&self) -> f64 {
        1.0 / self.a
    }

    pub fn unruh_temperature(&self) -> f64 {
        self.a / (2.0 * PI)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarAtomPair {
    pub omega0: f64,
    pub lambda: f64,
}

impl ScalarAtomPair {
    pub fn new(omega0: f64, lambda: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::InvalidInput(format!("transition frequency must be positive, got {omega0}")));
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidInput("coupling must be finite".into()));
        }
        Ok(Self { omega0, lambda })
    }
}

/// Event (t, x, y, z) at proper time τ.
pub fn rindler_event(a: f64, tau: f64, z0: f64) -> Result<[f64; 4]> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidInput(format!("proper acceleration must be positive, got {a}")));
    }
    let (s, c) = ((a * tau).sinh(), (a * tau).cosh());
    Ok([s / a, c / a, 0.0, z0])
}

pub fn unruh_temperature(a: f64) -> Result<f64> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::InvalidInput(format!("acceleration must be non-negative, got {a}")));
    }
    Ok(a / (2.0 * PI))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingLaw {
    pub zone: String,
    pub law: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceleratedReport {
    pub regime: Regime,
    pub value: Option<f64>,
    pub unruh_temperature: f64,
    pub z_a: f64,
    pub scaling_laws: Vec<ScalingLaw>,
    pub notes: String,
}

fn law(zone: &str, law: &str) -> ScalingLaw {
    ScalingLaw { zone: zone.into(), law: law.into() }
}

/// Scalar-field Casimir–Polder energy of two coaccelerated atoms.
///
/// From 10·z_a on the energy is −λ⁴/(512π⁴ω₀²az⁴). Below z_a/10 the pair
/// behaves like atoms at rest in a bath at T_U and only scaling laws are
/// reported. In between nothing is computed.
pub fn scalar_cp_accelerated(pair: &ScalarAtomPair, acc: &AcceleratedPair) -> AcceleratedReport {
    let (a, z) = (acc.a, acc.z);
    let mut report = AcceleratedReport {
        regime: Regime::Intermediate,
        value: None,
        unruh_temperature: acc.unruh_temperature(),
        z_a: acc.z_a(),
        scaling_laws: Vec::new(),
        notes: String::new(),
    };
    if z >= ACCELERATION_REGIME_FACTOR * acc.z_a() {
        report.regime = Regime::AcceleratedBeyond;
        report.value = Some(-pair.lambda.powi(4) / (512.0 * PI.powi(4) * pair.omega0.powi(2) * a * z.powi(4)));
        report.scaling_laws = vec![law("beyond z_a", "z⁻⁴")];
    } else if z < acc.z_a() / ACCELERATION_REGIME_FACTOR {
        report.regime = Regime::AcceleratedThermal;
        report.scaling_laws = vec![
            law("near", "z⁻²"),
            law("far", "z⁻³"),
            law("thermal correction", "∝ T_U²"),
            law("very long distance", "∝ T_U/z²"),
        ];
        report.notes =
            "equivalent to atoms at rest in a thermal bath at the Unruh temperature; no coefficient computed".into();
    } else {
        report.notes = "crossover region around z_a; no closed form available".into();
    }
    report
}

/// Resonance energy of two coaccelerated atoms in a Bell state, valid for
/// z ≥ 10·z_a:
///
/// ±μ_Aℓμ_Bm/z³ {(δ_ℓm − q_ℓq_m − 2n_ℓn_m)[2ω₀z sin Φ − (2ω₀²z/a) cos Φ]
///              + q_ℓq_m (8/az) cos Φ},  Φ = (2ω₀/a) ln(az),
///
/// with q = x̂ the acceleration and n = ẑ the separation direction.
pub fn resonance_accelerated(spec: &BellPairSpec, acc: &AcceleratedPair) -> Result<EnergyResult> {
    let r = spec.r_vec.norm();
    if spec.r_vec.x().abs() > 1e-12 * r || spec.r_vec.y().abs() > 1e-12 * r {
        return Err(Error::DegenerateGeometry("separation must be along ẑ, orthogonal to the acceleration".into()));
    }
    if (r - acc.z).abs() > 1e-12 * acc.z {
        return Err(Error::InvalidInput(format!("atom separation {r} does not match the pair separation {}", acc.z)));
    }
    let (a, z, w) = (acc.a, acc.z, spec.k0());
    if z < ACCELERATION_REGIME_FACTOR * acc.z_a() {
        return Err(Error::Validity(format!(
            "z = {z} is inside 10·z_a = {}; the asymptotic form needs z ≫ 1/a",
            ACCELERATION_REGIME_FACTOR * acc.z_a()
        )));
    }
    let phi = 2.0 * w / a * (a * z).ln();
    let (s, c) = phi.sin_cos();
    let (ma, mb) = (spec.atom_a.dipole, spec.atom_b.dipole);
    let (q, n) = (Vec3::X, Vec3::Z);
    let transverse = ma.dot(mb) - ma.dot(q) * mb.dot(q) - 2.0 * ma.dot(n) * mb.dot(n);
    let along = ma.dot(q) * mb.dot(q);
    let bracket = transverse * (2.0 * w * z * s - 2.0 * w * w * z / a * c) + along * 8.0 / (a * z) * c;
    let value = spec.parity.sign() * bracket / z.powi(3);
    Ok(EnergyResult::exact(value, Regime::AcceleratedBeyond).with_note(crate::resonance::DECAY_NOTE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::Parity;

    fn pair_spec(dipole: Vec3, z: f64, parity: Parity) -> BellPairSpec {
        BellPairSpec::from_dipoles(1.0, dipole, dipole, Vec3::Z * z, parity).unwrap()
    }

    fn accelerated(dipole: Vec3, z: f64, a: f64) -> f64 {
        resonance_accelerated(&pair_spec(dipole, z, Parity::Symmetric), &AcceleratedPair::new(a, z).unwrap())
            .unwrap()
            .value
    }

    #[test]
    fn rindler_examples() {
        assert_eq!(rindler_event(2.0, 0.0, 3.0).unwrap(), [0.0, 0.5, 0.0, 3.0]);
        let e = rindler_event(1.0, 1.0, 0.0).unwrap();
        assert!((e[0] - 1.175_20).abs() < 1e-5 && (e[1] - 1.543_08).abs() < 1e-5);
        for (a, tau) in [(0.5, -3.0), (2.0, 0.7), (1e-2, 40.0)] {
            let e = rindler_event(a, tau, 0.0).unwrap();
            let inv = e[1] * e[1] - e[0] * e[0];
            assert!((inv * a * a - 1.0).abs() < 1e-10);
        }
        assert!(rindler_event(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn unruh_examples() {
        assert!((unruh_temperature(2.0 * PI).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(unruh_temperature(0.0).unwrap(), 0.0);
        assert_eq!(unruh_temperature(3.0).unwrap() * 2.0, unruh_temperature(6.0).unwrap());
        let p = AcceleratedPair::new(4.0, 1.0).unwrap();
        assert_eq!(p.z_a() * p.a, 1.0);
        assert!((p.unruh_temperature() * 2.0 * PI - p.a).abs() < 1e-15);
    }

    #[test]
    fn scalar_beyond_value_and_scaling() {
        let pair = ScalarAtomPair::new(1.0, 1.0).unwrap();
        let r = scalar_cp_accelerated(&pair, &AcceleratedPair::new(1.0, 10.0).unwrap());
        assert_eq!(r.regime, Regime::AcceleratedBeyond);
        let v = r.value.unwrap();
        let want = -1.0 / (512.0 * PI.powi(4) * 1e4);
        assert!((v - want).abs() < 1e-12 * want.abs());
        assert!((v + 2.0051e-9).abs() < 1e-12);
        let v2 = scalar_cp_accelerated(&pair, &AcceleratedPair::new(1.0, 20.0).unwrap()).value.unwrap();
        assert_eq!(v2 / v, 1.0 / 16.0);
        assert!(v < 0.0 && v2 < 0.0);
    }

    #[test]
    fn scalar_thermal_and_intermediate_regimes() {
        let pair = ScalarAtomPair::new(1.0, 1.0).unwrap();
        let r = scalar_cp_accelerated(&pair, &AcceleratedPair::new(1.0, 0.01).unwrap());
        assert_eq!(r.regime, Regime::AcceleratedThermal);
        assert!(r.value.is_none());
        assert!((r.unruh_temperature - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert_eq!(r.scaling_laws.len(), 4);
        let mid = scalar_cp_accelerated(&pair, &AcceleratedPair::new(1.0, 1.0).unwrap());
        assert_eq!(mid.regime, Regime::Intermediate);
        assert!(mid.value.is_none());
    }

    #[test]
    fn accelerated_resonance_errors() {
        let acc = AcceleratedPair::new(1.0, 5.0).unwrap();
        let spec = pair_spec(Vec3::Z, 5.0, Parity::Symmetric);
        assert!(matches!(resonance_accelerated(&spec, &acc), Err(Error::Validity(_))));
        let tilted =
            BellPairSpec::from_dipoles(1.0, Vec3::Z, Vec3::Z, Vec3::new(1.0, 0.0, 50.0), Parity::Symmetric).unwrap();
        let acc = AcceleratedPair::new(1.0, tilted.r_vec.norm()).unwrap();
        assert!(matches!(resonance_accelerated(&tilted, &acc), Err(Error::DegenerateGeometry(_))));
    }

    #[test]
    fn parity_flip() {
        let acc = AcceleratedPair::new(0.5, 300.0).unwrap();
        let s = resonance_accelerated(&pair_spec(Vec3::new(0.3, 0.2, 0.9), 300.0, Parity::Symmetric), &acc).unwrap();
        let t =
            resonance_accelerated(&pair_spec(Vec3::new(0.3, 0.2, 0.9), 300.0, Parity::Antisymmetric), &acc).unwrap();
        assert_eq!(s.value, -t.value);
    }

    #[test]
    fn x_dipoles_keep_only_the_acceleration_term() {
        let (a, z) = (1.0, 500.0);
        let v = accelerated(Vec3::X, z, a);
        let phi = 2.0 / a * (a * z).ln();
        assert!((v - 8.0 / (a * z.powi(4)) * phi.cos()).abs() < 1e-14 * v.abs().max(1e-20));
    }

    #[test]
    fn envelope_powers() {
        let a = 1.0;
        let w = 1.0;
        // x̂ dipoles: crests at Φ = nπ
        let crest_x = |n: f64| (n * PI * a / (2.0 * w)).exp() / a;
        let zs: Vec<f64> = (0..40).map(|n| crest_x(n as f64)).filter(|z| (1e2..=1e4).contains(z)).collect();
        let fit = |pts: &[(f64, f64)]| {
            let n = pts.len() as f64;
            let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
            let (mx, my) = (sx / n, sy / n);
            let num: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
            let den: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
            num / den
        };
        let pts: Vec<(f64, f64)> = zs.iter().map(|&z| (z.ln(), accelerated(Vec3::X, z, a).abs().ln())).collect();
        assert!(pts.len() >= 2);
        assert!((fit(&pts) + 4.0).abs() < 0.05, "{}", fit(&pts));
        // ẑ dipoles: 2ω₀ sin Φ − (2ω₀²/a) cos Φ = C sin(Φ − φ), crests at Φ − φ = π/2 + nπ
        let phase = (w / a).atan();
        let crest_z = |n: f64| ((phase + PI / 2.0 + n * PI) * a / (2.0 * w)).exp() / a;
        let zs: Vec<f64> = (0..40).map(|n| crest_z(n as f64)).filter(|z| (1e2..=1e4).contains(z)).collect();
        let pts: Vec<(f64, f64)> = zs.iter().map(|&z| (z.ln(), accelerated(Vec3::Z, z, a).abs().ln())).collect();
        assert!(pts.len() >= 2);
        assert!((fit(&pts) + 2.0).abs() < 0.05, "{}", fit(&pts));
    }

    #[test]
    fn log_periodic_zero_spacing() {
        let (a, w) = (1.0, 1.0);
        let f = |z: f64| accelerated(Vec3::X, z, a);
        let mut zeros = Vec::new();
        let grid: Vec<f64> = (0..=2000).map(|i| 1e2 * 100f64.powf(i as f64 / 2000.0)).collect();
        for pair in grid.windows(2) {
            let (mut lo, mut hi) = (pair[0], pair[1]);
            if f(lo).signum() == f(hi).signum() {
                continue;
            }
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if f(mid).signum() == f(lo).signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
        assert!(zeros.len() >= 2);
        let want = (PI * a / (2.0 * w)).exp();
        for z in zeros.windows(2) {
            assert!((z[1] / z[0] - want).abs() < 1e-2 * want);
        }
    }
}
