//! Dispersion (van der Waals / Casimir–Polder), resonance and vacuum-field
//! quantities for neutral atoms.
//!
//! Everything is computed in natural units (ħ = c = k_B = 1): energies and
//! wavenumbers share one unit (inverse length) and polarizabilities are
//! volumes. See [`units`] for conversion to atomic units or SI output.
//!
//! Module map:
//!
//! - [`units`], [`geometry`], [`result`]: shared plumbing
//! - [`quadrature`]: semi-infinite adaptive integration on the imaginary axis
//! - [`polarizability`]: atomic dynamic polarizability models
//! - [`kernels`]: dipole field tensors, vacuum correlations and the F-chain
//! - [`two_body`], [`three_body`]: dispersion energies between atoms
//! - [`density`]: renormalized field energy densities
//! - [`boundary`]: atoms near a perfectly conducting plate
//! - [`resonance`]: resonance interaction of entangled two-level atoms
//! - [`noninertial`]: uniformly accelerated atoms

// NaN inputs are rejected with negated comparisons throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod boundary;
pub mod density;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod noninertial;
pub mod polarizability;
pub mod quadrature;
pub mod resonance;
pub mod result;
pub mod three_body;
pub mod two_body;
pub mod units;

pub use error::{Error, Result};
pub use geometry::{ImageGeometry, TriangleGeometry, Vec3, COINCIDENCE_THRESHOLD};
pub use kernels::{DiffSpec, Tensor3};
pub use polarizability::{PolarizabilityModel, Transition, TwoLevelAtom};
pub use quadrature::{IntegralResult, QuadratureSpec};
pub use result::{EnergyResult, Regime};
