use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("atom inside conductor: z = {z} (plate at z = 0)")]
    InsideConductor { z: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("k = {k} lies within the exclusion width of the resonance pole at k_mg = {pole}")]
    ResonancePole { k: f64, pole: f64 },

    #[error("integrand returned a non-finite value at u = {at}")]
    IntegrandDomain { at: f64 },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (best estimate {estimate:e} ± {error:e})"
    )]
    Convergence { estimate: f64, error: f64, subdivisions: usize },

    #[error("Richardson sequence does not converge (successive ratio {ratio:.3})")]
    Differentiation { ratio: f64 },

    #[error("a static-only polarizability model has no transition data: {0}")]
    InsufficientData(String),

    #[error("correlation route deviates from the direct integral by {relative:e} (relative)")]
    ConsistencyViolation { relative: f64 },

    #[error("outside validity range: {0}")]
    Validity(String),

    #[error("unit conversion: {0}")]
    Units(String),

    #[error("no crossover found: {0}")]
    NoCrossover(String),
}

impl Error {
    /// Numerical failures (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::IntegrandDomain { .. }
                | Error::Convergence { .. }
                | Error::Differentiation { .. }
                | Error::ConsistencyViolation { .. }
                | Error::NoCrossover(_)
        )
    }
}
