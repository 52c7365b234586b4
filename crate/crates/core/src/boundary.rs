//! Atoms in front of a perfectly conducting plate at z = 0.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{ImageGeometry, Vec3};
use crate::result::{EnergyResult, Regime};
use crate::two_body::FAR_ZONE_MULTIPLE;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomWallResult {
    pub energy: f64,
    /// Negative values point toward the plate.
    pub force: f64,
    pub regime: Regime,
    pub notes: String,
}

/// Far-zone atom–wall energy −3α/(8πz⁴) and force −3α/(2πz⁵).
///
/// With `lambda_min` given, heights not beyond the far-zone threshold are
/// flagged in the notes.
pub fn atom_wall(alpha: f64, z: f64, lambda_min: Option<f64>) -> Result<AtomWallResult> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::InsideConductor { z });
    }
    let energy = -3.0 * alpha / (8.0 * PI * z.powi(4));
    let force = -3.0 * alpha / (2.0 * PI * z.powi(5));
    let (regime, notes) = match lambda_min {
        Some(l) if z <= FAR_ZONE_MULTIPLE * l => (
            Regime::Intermediate,
            "height is not in the far zone; static formula used outside its validity".to_string(),
        ),
        _ => (Regime::Far, String::new()),
    };
    Ok(AtomWallResult { energy, force, regime, notes })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlatePairResult {
    pub geometry: ImageGeometry,
    pub direct: f64,
    pub image: f64,
    pub cross: f64,
    pub total: EnergyResult,
}

pub const PLATE_CSV_HEADER: &str = "r,r_bar,sin2_theta,sin2_theta_bar,direct,image,cross,total";

impl PlatePairResult {
    pub fn csv_row(&self) -> String {
        let g = &self.geometry;
        format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            g.r, g.r_bar, g.sin2_theta, g.sin2_theta_bar, self.direct, self.image, self.cross, self.total.value
        )
    }
}

/// r⁴s + 5r³r̄s + r²r̄²(6 + s + s̄) + 5rr̄³s̄ + r̄⁴s̄ with s = sin²θ, s̄ = sin²θ̄.
pub fn cross_term_polynomial(r: f64, r_bar: f64, s: f64, s_bar: f64) -> f64 {
    let (r2, rb2) = (r * r, r_bar * r_bar);
    r2 * r2 * s
        + 5.0 * r2 * r * r_bar * s
        + r2 * rb2 * (6.0 + s + s_bar)
        + 5.0 * r * rb2 * r_bar * s_bar
        + rb2 * rb2 * s_bar
}

/// Far-zone dispersion energy of two atoms near the plate: the free-space
/// term, the same law at the image distance r̄, and the direct–image cross
/// term (8/π)α_Aα_B P/(r³r̄³(r + r̄)⁵).
pub fn pair_near_plate(
    alpha_a: f64,
    alpha_b: f64,
    pos_a: Vec3,
    pos_b: Vec3,
    lambda_min: Option<f64>,
) -> Result<PlatePairResult> {
    let g = ImageGeometry::new(pos_a, pos_b)?;
    let (r, rb) = (g.r, g.r_bar);
    let aa = alpha_a * alpha_b;
    let direct = -23.0 * aa / (4.0 * PI * r.powi(7));
    let image = -23.0 * aa / (4.0 * PI * rb.powi(7));
    let cross = 8.0 * aa / PI * cross_term_polynomial(r, rb, g.sin2_theta, g.sin2_theta_bar)
        / (r.powi(3) * rb.powi(3) * (r + rb).powi(5));
    let mut total = EnergyResult::exact(direct + image + cross, Regime::Far);
    match lambda_min {
        Some(l) => {
            let far = |d: f64| d > FAR_ZONE_MULTIPLE * l;
            match (far(r), far(rb)) {
                (true, true) => {}
                (false, false) => {
                    total.regime = Regime::Intermediate;
                    total = total
                        .with_note("neither distance is in the far zone; static formula used outside its validity");
                }
                _ => {
                    total.regime = Regime::Intermediate;
                    total = total.with_note("mixed regime: one of r, r̄ is not in the far zone");
                }
            }
        }
        None => total = total.with_note("no transition data; far zone assumed"),
    }
    Ok(PlatePairResult { geometry: g, direct, image, cross, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rotate;
    use crate::kernels::g_tensor_complex;
    use crate::quadrature::{integrate_semi_infinite_scaled, QuadratureSpec};
    use crate::two_body::cp_far;
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn atom_wall_values() {
        let w = atom_wall(1.0, 2.0, None).unwrap();
        assert!((w.energy + 3.0 / (128.0 * PI)).abs() < 1e-17);
        assert!((w.energy + 7.4604e-3).abs() < 1e-7);
        assert!((w.force + 3.0 / (64.0 * PI)).abs() < 1e-17);
        assert!((w.force + 1.4921e-2).abs() < 1e-6);
        assert!(matches!(atom_wall(1.0, 0.0, None), Err(Error::InsideConductor { .. })));
        assert!(atom_wall(1.0, 1.0, Some(1.0)).unwrap().notes.contains("far zone"));
    }

    #[test]
    fn force_is_minus_energy_gradient() {
        for z in [0.5, 2.0, 30.0] {
            let h = 1e-3 * z;
            let e = |z: f64| atom_wall(1.0, z, None).unwrap().energy;
            let (d1, d2) = ((e(z + h) - e(z - h)) / (2.0 * h), (e(z + h / 2.0) - e(z - h / 2.0)) / h);
            let derivative = (4.0 * d2 - d1) / 3.0;
            let f = atom_wall(1.0, z, None).unwrap().force;
            assert!((f + derivative).abs() < 1e-8 * f.abs(), "z={z}");
        }
    }

    #[test]
    fn recedes_to_free_space() {
        let lateral = 1.0;
        let mut previous = f64::INFINITY;
        for h in [10.0, 100.0, 1000.0] {
            let p = pair_near_plate(1.0, 1.0, Vec3::new(0.0, 0.0, h), Vec3::new(lateral, 0.0, h), None).unwrap();
            let free = cp_far(1.0, 1.0, lateral).unwrap();
            let dev = (p.total.value - free).abs() / free.abs();
            assert!(dev < previous);
            previous = dev;
        }
        assert!(previous < 1e-3);
    }

    #[test]
    fn exchange_symmetry_is_exact() {
        let (a, b) = (Vec3::new(0.1, -0.3, 0.7), Vec3::new(1.2, 0.4, 2.5));
        let ab = pair_near_plate(1.3, 0.4, a, b, None).unwrap();
        let ba = pair_near_plate(0.4, 1.3, b, a, None).unwrap();
        assert_eq!(ab.total.value, ba.total.value);
    }

    #[test]
    fn surface_limit_reduction() {
        let (a, b) = (Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.8, 0.3, 1e-9));
        let p = pair_near_plate(1.0, 1.0, a, b, None).unwrap();
        let s = p.geometry.sin2_theta;
        let r = p.geometry.r;
        let want = (-23.0 / (2.0 * PI) + (14.0 * s + 6.0) / (4.0 * PI)) / r.powi(7);
        assert!((p.total.value - want).abs() < 1e-7 * want.abs());
    }

    #[test]
    fn in_plane_motions_leave_energy_unchanged() {
        let (a, b) = (Vec3::new(0.1, -0.3, 0.7), Vec3::new(1.2, 0.4, 2.5));
        let base = pair_near_plate(1.0, 1.0, a, b, None).unwrap().total.value;
        let shift = Vec3::new(3.0, -7.0, 0.0);
        let moved = |p: Vec3| rotate(p, Vec3::Z, 0.77) + shift;
        let v = pair_near_plate(1.0, 1.0, moved(a), moved(b), None).unwrap().total.value;
        assert!((v - base).abs() < 1e-12 * base.abs());
    }

    #[test]
    fn regime_flags() {
        let a = Vec3::new(0.0, 0.0, 1000.0);
        let b = Vec3::new(0.5, 0.0, 1000.0);
        let p = pair_near_plate(1.0, 1.0, a, b, Some(0.01)).unwrap();
        assert!(p.total.notes.contains("mixed"));
        let far = pair_near_plate(1.0, 1.0, a, Vec3::new(500.0, 0.0, 1000.0), Some(0.01)).unwrap();
        assert!(far.total.notes.is_empty());
        assert!(matches!(
            pair_near_plate(1.0, 1.0, a, Vec3::new(0.0, 0.0, -1.0), None),
            Err(Error::InsideConductor { .. })
        ));
        assert_eq!(p.csv_row().split(',').count(), PLATE_CSV_HEADER.split(',').count());
    }

    /// Correlation route with image dipoles: the field correlation and
    /// potential tensor both carry X = G(r) − σG(r̄), so
    /// ΔE = −(α_Aα_B/2π) ∫du Re[(iu)⁶ X(iu):X(iu)].
    fn plate_correlation_route(pos_a: Vec3, pos_b: Vec3) -> f64 {
        let r_vec = pos_b - pos_a;
        let rb_vec = pos_b - pos_a.reflect_z();
        let sigma = [1.0, 1.0, -1.0];
        let shortest = r_vec.norm().min(rb_vec.norm());
        let integral = integrate_semi_infinite_scaled(
            |u| {
                let k = Complex64::new(0.0, u);
                let g = g_tensor_complex(k, r_vec).unwrap();
                let gb = g_tensor_complex(k, rb_vec).unwrap();
                let mut x = g;
                for i in 0..3 {
                    for j in 0..3 {
                        x.0[i][j] -= gb.0[i][j] * sigma[i];
                    }
                }
                (k.powi(6) * x.double_dot(&x)).re
            },
            0.5 * shortest,
            &[],
            &QuadratureSpec::default(),
        )
        .unwrap();
        -integral.value / (2.0 * PI)
    }

    #[test]
    fn correlation_route_identity() {
        for (a, b) in [
            (Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, 3.0)),
            (Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 1.0)),
            (Vec3::new(0.2, 0.1, 0.5), Vec3::new(-0.6, 0.9, 1.4)),
        ] {
            let route = plate_correlation_route(a, b);
            let closed = pair_near_plate(1.0, 1.0, a, b, None).unwrap().total.value;
            assert!((route - closed).abs() < 1e-2 * closed.abs(), "{route} vs {closed}");
        }
    }

    proptest! {
        #[test]
        fn cross_polynomial_is_non_negative(
            r in 1e-3f64..1e3,
            rb in 1e-3f64..1e3,
            s in 0.0f64..=1.0,
            sb in 0.0f64..=1.0,
        ) {
            prop_assert!(cross_term_polynomial(r, rb, s, sb) >= 0.0);
        }
    }
}
