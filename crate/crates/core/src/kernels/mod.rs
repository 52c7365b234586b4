//! Analytic tensor kernels of the oscillating-dipole field.
//!
//! G_ij(k, r) = (1/k³)(∇_i∇_j − δ_ij∇²) e^{ikr}/r
//!            = [(δ_ij − r̂_ir̂_j)/kr + (δ_ij − 3r̂_ir̂_j)(i/k²r² − 1/k³r³)] e^{ikr},
//!
//! its real part −V_ij (the potential tensor of dipoles oscillating at
//! wavenumber k), the free-space equal-time electric correlation and the
//! polarization sum in front of a conducting plate. The differential
//! operator chain used by the three-body energies lives in [`fchain`].

mod fchain;
mod tensor;

pub use fchain::{apply_f_chain, apply_f_chain_radial, apply_f_chain_radial_capped, DiffSpec, FChainResult};
pub use tensor::Tensor3;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::{Vec3, COINCIDENCE_THRESHOLD};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GPart {
    FullComplex,
    Real,
    Imag,
}

fn unit_and_norm(r_vec: Vec3) -> Result<(Vec3, f64)> {
    let r = r_vec.norm();
    if !(r >= COINCIDENCE_THRESHOLD) || !r.is_finite() {
        return Err(Error::DegenerateGeometry(format!("kernel evaluated at separation {r}")));
    }
    Ok((r_vec * (1.0 / r), r))
}

/// Builds a·(δ − n̂n̂) + b·(δ − 3n̂n̂).
fn transverse_longitudinal<T>(n: Vec3, a: T, b: T) -> Tensor3<T>
where
    T: Copy + Default + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let mut out = Tensor3::<T>::default();
    for i in 0..3 {
        for j in 0..3 {
            let d = if i == j { 1.0 } else { 0.0 };
            let nn = n[i] * n[j];
            out.0[i][j] = a * (d - nn) + b * (d - 3.0 * nn);
        }
    }
    out
}

/// Radial coefficients (transverse, longitudinal-combination) of Re G:
/// cos x / x and −(sin x/x² + cos x/x³).
fn re_coefficients(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    (c / x, -(s / (x * x) + c / (x * x * x)))
}

/// Radial coefficients of Im G: sin x / x and (x cos x − sin x)/x³,
/// using series near x = 0 where the closed form cancels.
fn im_coefficients(x: f64) -> (f64, f64) {
    if x < 0.1 {
        let x2 = x * x;
        let sinc = 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
        let comb = -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0 + x2 * x2 * x2 / 45360.0;
        (sinc, comb)
    } else {
        let (s, c) = x.sin_cos();
        (s / x, (x * c - s) / (x * x * x))
    }
}

/// G_ij(k, r) for real k > 0, or its real or imaginary part.
pub fn g_tensor(k: f64, r_vec: Vec3, part: GPart) -> Result<Tensor3<Complex64>> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    let (n, r) = unit_and_norm(r_vec)?;
    let x = k * r;
    let re = || {
        let (a, b) = re_coefficients(x);
        transverse_longitudinal(n, a, b)
    };
    let im = || {
        let (a, b) = im_coefficients(x);
        transverse_longitudinal(n, a, b)
    };
    Ok(match part {
        GPart::Real => re().map(|v| Complex64::new(v, 0.0)),
        GPart::Imag => im().map(|v| Complex64::new(v, 0.0)),
        GPart::FullComplex => re().zip_with(&im(), Complex64::new),
    })
}

/// G_ij(k, r) for complex k, used on rotated integration contours.
pub fn g_tensor_complex(k: Complex64, r_vec: Vec3) -> Result<Tensor3<Complex64>> {
    if k == Complex64::new(0.0, 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!("wavenumber must be finite and non-zero, got {k}")));
    }
    let (n, r) = unit_and_norm(r_vec)?;
    let x = k * r;
    let phase = (Complex64::i() * x).exp();
    let inv = x.inv();
    let a = inv * phase;
    let b = (Complex64::i() * inv * inv - inv * inv * inv) * phase;
    Ok(transverse_longitudinal(n, a, b))
}

/// Potential tensor V_ij(k, r) = −Re G_ij(k, r).
pub fn v_tensor(k: f64, r_vec: Vec3) -> Result<Tensor3<f64>> {
    Ok(g_tensor(k, r_vec, GPart::Real)?.map(|z| -z.re))
}

/// Free-space equal-time correlation ⟨E_i(r′)E_j(r″)⟩ of the transverse
/// electric field at separation r = r′ − r″: −(4/π)(δ_ij − 2r̂_ir̂_j)/r⁴.
pub fn vacuum_e_correlation(r_vec: Vec3) -> Result<Tensor3<f64>> {
    let (n, r) = unit_and_norm(r_vec)
        .map_err(|_| Error::Domain("equal-time correlation diverges at coincident points".into()))?;
    let scale = -4.0 / (PI * r.powi(4));
    let mut out = Tensor3::default();
    for i in 0..3 {
        for j in 0..3 {
            let d = if i == j { 1.0 } else { 0.0 };
            out.0[i][j] = scale * (d - 2.0 * n[i] * n[j]);
        }
    }
    Ok(out)
}

/// Σ_λ f_i(kλ, r_A) f_j(kλ, r_B) for a perfectly conducting plate at z = 0:
/// (δ_ij − k̂_ik̂_j)e^{ik·(r_A − r_B)} − σ_iℓ(δ_ℓj − k̂_ℓk̂_j)e^{ik·(r_A − σr_B)}.
pub fn plate_polarization_sum(k_vec: Vec3, pos_a: Vec3, pos_b: Vec3) -> Result<Tensor3<Complex64>> {
    for z in [pos_a.z(), pos_b.z()] {
        if z <= 0.0 {
            return Err(Error::InsideConductor { z });
        }
    }
    let kn = k_vec.norm();
    if !(kn > 0.0 && kn.is_finite()) {
        return Err(Error::Domain("wave vector must be non-zero".into()));
    }
    let kh = k_vec * (1.0 / kn);
    let direct = Complex64::from_polar(1.0, k_vec.dot(pos_a - pos_b));
    let image = Complex64::from_polar(1.0, k_vec.dot(pos_a - pos_b.reflect_z()));
    let sigma = [1.0, 1.0, -1.0];
    let mut out = Tensor3::default();
    for i in 0..3 {
        for j in 0..3 {
            let d = if i == j { 1.0 } else { 0.0 };
            let proj = d - kh[i] * kh[j];
            out.0[i][j] = direct * proj - image * (sigma[i] * proj);
        }
    }
    Ok(out)
}
