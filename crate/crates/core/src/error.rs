use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("eigenvalue iteration did not converge (residual {residual:e})")]
    NonConvergence { residual: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("PT symmetry broken: m1^2 = {m1_sq} < m2^2 = {m2_sq}")]
    BrokenPhase { m1_sq: f64, m2_sq: f64 },

    #[error("boundary phase m1^2 = m2^2: physical mass vanishes")]
    BoundaryPhase,

    #[error("C undefined: PT broken")]
    CUndefined,

    #[error("PT symmetry broken: no real parametrization (m = {m} > m_max = {m_max})")]
    AboveMaximalMass { m: f64, m_max: f64 },

    #[error("maximal mass undefined for m2 = {0} (no bound without a gamma5 mass)")]
    NoMaximalMass(f64),

    #[error("theta = {0} outside [0, pi/2]")]
    ThetaOutOfRange(f64),

    #[error("mass exceeds curvature radius: m = {m} > M = {curvature}")]
    MassExceedsCurvature { m: f64, curvature: f64 },

    #[error("point is not on the hyperboloid (residual {residual:e})")]
    OffHyperboloid { residual: f64 },

    #[error("point is off the mass shell for m = {m} (residual {residual:e})")]
    OffShell { m: f64, residual: f64 },

    #[error("outside the flat-limit regime: {0}")]
    RegimeViolation(String),

    #[error("degenerate spectrum")]
    DegenerateSpectrum,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
