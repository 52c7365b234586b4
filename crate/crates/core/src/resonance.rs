//! Resonance interaction of two identical two-level atoms sharing one
//! excitation in the state (|e_A g_B⟩ ± |g_A e_B⟩)/√2.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::polarizability::TwoLevelAtom;
use crate::result::{EnergyResult, Regime};
use crate::two_body::{FAR_ZONE_MULTIPLE, NEAR_ZONE_FRACTION};
use crate::{Error, Result, Vec3, COINCIDENCE_THRESHOLD};

pub const DECAY_NOTE: &str = "spontaneous decay neglected";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Symmetric => 1.0,
            Parity::Antisymmetric => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Parity::Symmetric => Parity::Antisymmetric,
            Parity::Antisymmetric => Parity::Symmetric,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" | "+" | "plus" => Ok(Parity::Symmetric),
            "antisymmetric" | "-" | "minus" => Ok(Parity::Antisymmetric),
            other => Err(Error::InvalidInput(format!("unknown parity {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellPairSpec {
    pub atom_a: TwoLevelAtom,
    pub atom_b: TwoLevelAtom,
    pub parity: Parity,
    /// r_B − r_A.
    pub r_vec: Vec3,
}

impl BellPairSpec {
    pub fn new(atom_a: TwoLevelAtom, atom_b: TwoLevelAtom, parity: Parity) -> Result<Self> {
        let k_a = atom_a.k0;
        if (atom_a.k0 - atom_b.k0).abs() > 1e-12 * k_a {
            return Err(Error::InvalidInput(format!(
                "resonance needs identical atoms, got k₀ = {} and {}",
                atom_a.k0, atom_b.k0
            )));
        }
        let r_vec = atom_b.position - atom_a.position;
        if !(r_vec.norm() >= COINCIDENCE_THRESHOLD) {
            return Err(Error::DegenerateGeometry("atoms coincide".into()));
        }
        Ok(Self { atom_a, atom_b, parity, r_vec })
    }

    /// Atom A at the origin, atom B at `r_vec`.
    pub fn from_dipoles(k0: f64, dipole_a: Vec3, dipole_b: Vec3, r_vec: Vec3, parity: Parity) -> Result<Self> {
        Self::new(TwoLevelAtom::new(k0, dipole_a, Vec3::ZERO)?, TwoLevelAtom::new(k0, dipole_b, r_vec)?, parity)
    }

    pub fn k0(&self) -> f64 {
        self.atom_a.k0
    }
}

/// μ_A·T·μ_B for T = a(δ − 3n̂n̂) + b(δ − n̂n̂).
fn contract(mu_a: Vec3, mu_b: Vec3, n: Vec3, a: f64, b: f64) -> f64 {
    let dot = mu_a.dot(mu_b);
    let (an, bn) = (mu_a.dot(n), mu_b.dot(n));
    a * (dot - 3.0 * an * bn) + b * (dot - an * bn)
}

/// ±μ_Aiμ_Bj[(δ_ij − 3r̂_ir̂_j)(cos x + x sin x) − (δ_ij − r̂_ir̂_j)x² cos x]/r³
/// with x = k₀r.
pub fn resonance_energy(spec: &BellPairSpec) -> Result<EnergyResult> {
    let r = spec.r_vec.norm();
    if !(r >= COINCIDENCE_THRESHOLD) {
        return Err(Error::DegenerateGeometry("atoms coincide".into()));
    }
    let n = spec.r_vec * (1.0 / r);
    let x = spec.k0() * r;
    let (s, c) = x.sin_cos();
    let value =
        spec.parity.sign() * contract(spec.atom_a.dipole, spec.atom_b.dipole, n, c + x * s, -x * x * c) / r.powi(3);
    let lambda = 2.0 * PI / spec.k0();
    let regime = if r < NEAR_ZONE_FRACTION * lambda {
        Regime::Near
    } else if r > FAR_ZONE_MULTIPLE * lambda {
        Regime::Far
    } else {
        Regime::Intermediate
    };
    Ok(EnergyResult::exact(value, regime).with_note(DECAY_NOTE))
}
