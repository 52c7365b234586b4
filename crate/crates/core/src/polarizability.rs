//! Isotropic atomic dynamic polarizability built from discrete transitions,
//!
//! α(k) = (2/3) Σ_m k_mg |μ^{mg}|² / (k_mg² − k²),
//!
//! with wavenumbers k_mg = E_mg/ħc. Dispersion integrals use it on the
//! imaginary axis, α(iu) = (2/3) Σ_m k_mg |μ^{mg}|² / (k_mg² + u²).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::geometry::Vec3;
use crate::{Error, Result};

/// Relative half-width around each real-axis pole that is excluded.
pub const POLE_EXCLUSION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    /// Transition wavenumber k_mg > 0.
    pub k: f64,
    /// |μ^{mg}|², energy × volume in natural units.
    pub mu2: f64,
}

impl Transition {
    pub fn new(k: f64, mu2: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidInput(format!("transition wavenumber must be positive, got {k}")));
        }
        if !(mu2.is_finite() && mu2 >= 0.0) {
            return Err(Error::InvalidInput(format!("|mu|^2 must be non-negative, got {mu2}")));
        }
        Ok(Self { k, mu2 })
    }

    #[inline]
    fn imag_term(&self, u: f64) -> f64 {
        imag_axis_term(self.k, self.mu2, u)
    }
}

#[inline]
fn imag_axis_term(k: f64, mu2: f64, u: f64) -> f64 {
    2.0 / 3.0 * k * mu2 / (k * k + u * u)
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PolarizabilityModel {
    pub transitions: Vec<Transition>,
    pub static_override: Option<f64>,
}

impl PolarizabilityModel {
    pub fn from_transitions(transitions: Vec<Transition>) -> Result<Self> {
        for t in &transitions {
            Transition::new(t.k, t.mu2)?;
        }
        Ok(Self { transitions, static_override: None })
    }

    /// Frequency-independent polarizability.
    pub fn static_only(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidInput(format!("static polarizability must be non-negative, got {alpha}")));
        }
        Ok(Self { transitions: Vec::new(), static_override: Some(alpha) })
    }

    /// One transition at `k` with squared dipole `mu2`.
    pub fn two_level(k: f64, mu2: f64) -> Result<Self> {
        Self::from_transitions(vec![Transition::new(k, mu2)?])
    }

    /// Two-level model whose static polarizability equals `alpha`.
    pub fn two_level_with_static(k: f64, alpha: f64) -> Result<Self> {
        Self::two_level(k, 1.5 * alpha * k)
    }

    pub fn is_transition_based(&self) -> bool {
        !self.transitions.is_empty()
    }

    pub fn alpha_static(&self) -> f64 {
        if self.transitions.is_empty() {
            self.static_override.unwrap_or(0.0)
        } else {
            self.transitions.iter().map(|t| t.imag_term(0.0)).sum()
        }
    }

    pub fn max_k(&self) -> Option<f64> {
        self.transitions.iter().map(|t| t.k).reduce(f64::max)
    }

    /// Shortest transition wavelength 2π/max k_mg.
    pub fn lambda_min(&self) -> Option<f64> {
        self.max_k().map(|k| 2.0 * std::f64::consts::PI / k)
    }

    /// α(iu) without the domain check; callers inside the crate use it in
    /// integrands where u ≥ 0 holds by construction.
    #[inline]
    pub(crate) fn alpha_imag_unchecked(&self, u: f64) -> f64 {
        if self.transitions.is_empty() {
            return self.static_override.unwrap_or(0.0);
        }
        self.transitions.iter().map(|t| t.imag_term(u)).sum()
    }

    pub fn alpha_imag(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) {
            return Err(Error::Domain(format!("imaginary wavenumber must be non-negative, got {u}")));
        }
        Ok(self.alpha_imag_unchecked(u))
    }

    /// α(k) on the real axis. Poles are excluded, not principal-valued.
    pub fn alpha_real(&self, k: f64) -> Result<f64> {
        if !k.is_finite() {
            return Err(Error::Domain(format!("wavenumber must be finite, got {k}")));
        }
        if self.transitions.is_empty() {
            return Ok(self.static_override.unwrap_or(0.0));
        }
        let mut sum = 0.0;
        for t in &self.transitions {
            if (k.abs() - t.k).abs() <= POLE_EXCLUSION * t.k {
                return Err(Error::ResonancePole { k, pole: t.k });
            }
            sum += 2.0 / 3.0 * t.k * t.mu2 / (t.k * t.k - k * k);
        }
        Ok(sum)
    }

    /// Σ mu2·k_mg, the coefficient of the u⁻² tail: α(iu) → (2/3)·S/u².
    pub fn oscillator_sum(&self) -> f64 {
        self.transitions.iter().map(|t| t.mu2 * t.k).sum()
    }

    /// Same model with every dipole strength multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            transitions: self.transitions.iter().map(|t| Transition { k: t.k, mu2: t.mu2 * factor }).collect(),
            static_override: self.static_override.map(|a| a * factor),
        }
    }
}

pub fn alpha_imag(model: &PolarizabilityModel, u: f64) -> Result<f64> {
    model.alpha_imag(u)
}

pub fn alpha_real(model: &PolarizabilityModel, k: f64) -> Result<f64> {
    model.alpha_real(k)
}

/// Two-level atom with a real dipole matrix element μ^{eg}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelAtom {
    pub k0: f64,
    pub dipole: Vec3,
    pub position: Vec3,
}

impl TwoLevelAtom {
    pub fn new(k0: f64, dipole: Vec3, position: Vec3) -> Result<Self> {
        if !(k0.is_finite() && k0 > 0.0) {
            return Err(Error::InvalidInput(format!("transition wavenumber must be positive, got {k0}")));
        }
        if !(dipole.is_finite() && position.is_finite()) {
            return Err(Error::InvalidInput("non-finite dipole or position".into()));
        }
        Ok(Self { k0, dipole, position })
    }

    pub fn dipole_sq(&self) -> f64 {
        self.dipole.dot(self.dipole)
    }

    /// The same atom in its ground state, as a one-transition model.
    pub fn ground_state_model(&self) -> PolarizabilityModel {
        PolarizabilityModel {
            transitions: vec![Transition { k: self.k0, mu2: self.dipole_sq() }],
            static_override: None,
        }
    }

    #[inline]
    pub(crate) fn alpha_excited_unchecked(&self, u: f64) -> f64 {
        -imag_axis_term(self.k0, self.dipole_sq(), u)
    }
}

/// Isotropically averaged excited-state polarizability at imaginary
/// wavenumber, −(2/3)·k₀|μ|²/(k₀² + u²).
pub fn alpha_excited_two_level(atom: &TwoLevelAtom, u: f64) -> Result<f64> {
    if !(u >= 0.0) {
        return Err(Error::Domain(format!("imaginary wavenumber must be non-negative, got {u}")));
    }
    Ok(atom.alpha_excited_unchecked(u))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarizabilityKind {
    Electric,
    Magnetic,
}

/// An atom as described in the JSON input schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomDescription {
    pub name: String,
    pub transitions: Vec<Transition>,
    #[serde(rename = "static", skip_serializing_if = "Option::is_none")]
    pub static_alpha: Option<f64>,
    pub kind: PolarizabilityKind,
}

/// Schema violation with a JSON path such as `$.transitions[1].k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for SchemaError {}

fn schema_err(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError { path: path.into(), message: message.into() }
}

fn number_at(obj: &serde_json::Map<String, Value>, key: &str, path: &str) -> Result<f64, SchemaError> {
    match obj.get(key) {
        Some(Value::Number(n)) => {
            n.as_f64().ok_or_else(|| schema_err(format!("{path}.{key}"), "not representable as f64"))
        }
        Some(_) => Err(schema_err(format!("{path}.{key}"), "expected a number")),
        None => Err(schema_err(format!("{path}.{key}"), "missing required field")),
    }
}

impl AtomDescription {
    pub fn from_json_str(text: &str) -> Result<Self, SchemaError> {
        let value: Value = serde_json::from_str(text).map_err(|e| schema_err("$", format!("malformed JSON: {e}")))?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &Value) -> Result<Self, SchemaError> {
        let obj = value.as_object().ok_or_else(|| schema_err("$", "expected an object"))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "name" | "transitions" | "static" | "kind") {
                return Err(schema_err(format!("$.{key}"), "unknown field"));
            }
        }
        let name = match obj.get("name") {
            Some(Value::String(s)) => s.clone(),
            Some(_) => return Err(schema_err("$.name", "expected a string")),
            None => return Err(schema_err("$.name", "missing required field")),
        };
        let list = match obj.get("transitions") {
            Some(Value::Array(a)) => a,
            Some(_) => return Err(schema_err("$.transitions", "expected an array")),
            None => return Err(schema_err("$.transitions", "missing required field")),
        };
        let mut transitions = Vec::with_capacity(list.len());
        for (i, item) in list.iter().enumerate() {
            let path = format!("$.transitions[{i}]");
            let t = item.as_object().ok_or_else(|| schema_err(&path, "expected an object"))?;
            for key in t.keys() {
                if key != "k" && key != "mu2" {
                    return Err(schema_err(format!("{path}.{key}"), "unknown field"));
                }
            }
            let k = number_at(t, "k", &path)?;
            let mu2 = number_at(t, "mu2", &path)?;
            if !(k > 0.0) {
                return Err(schema_err(format!("{path}.k"), "must be positive"));
            }
            if !(mu2 >= 0.0) {
                return Err(schema_err(format!("{path}.mu2"), "must be non-negative"));
            }
            transitions.push(Transition { k, mu2 });
        }
        let static_alpha = match obj.get("static") {
            None | Some(Value::Null) => None,
            Some(Value::Number(n)) => {
                let a = n.as_f64().unwrap_or(f64::NAN);
                if !(a >= 0.0) {
                    return Err(schema_err("$.static", "must be non-negative"));
                }
                Some(a)
            }
            Some(_) => return Err(schema_err("$.static", "expected a number")),
        };
        if transitions.is_empty() && static_alpha.is_none() {
            return Err(schema_err("$.transitions", "empty transition list requires a 'static' value"));
        }
        let kind = match obj.get("kind") {
            Some(Value::String(s)) if s == "electric" => PolarizabilityKind::Electric,
            Some(Value::String(s)) if s == "magnetic" => PolarizabilityKind::Magnetic,
            Some(_) => return Err(schema_err("$.kind", "expected \"electric\" or \"magnetic\"")),
            None => return Err(schema_err("$.kind", "missing required field")),
        };
        Ok(Self { name, transitions, static_alpha, kind })
    }

    pub fn model(&self) -> PolarizabilityModel {
        PolarizabilityModel { transitions: self.transitions.clone(), static_override: self.static_alpha }
    }
}
