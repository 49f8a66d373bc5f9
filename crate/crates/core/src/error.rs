use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions disagree: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("eigen-solver did not converge after {iterations} QR sweeps")]
    EigenFailure { iterations: usize },
    #[error("eigenvector condition {condition:.3e} exceeds cap {cap:.1e}")]
    DefectiveMatrix { condition: f64, cap: f64 },
    #[error("function is singular at eigenvalue {re}{im:+}i: {what}")]
    DomainError { re: f64, im: f64, what: String },
    #[error("matrix is numerically singular")]
    SingularMatrix,
    #[error("matrices do not commute (commutator norm {norm:.3e})")]
    NonCommuting { norm: f64 },
    #[error("|z| = {modulus} is outside the admissible region (radius {radius})")]
    RadiusViolation { modulus: f64, radius: f64 },
    #[error("series did not meet tolerance after {terms} terms (last ratio {ratio:.3e})")]
    TruncationFailure { terms: usize, ratio: f64 },
    #[error("Q_{index} + {ell}kI is not invertible")]
    SingularQShift { index: usize, ell: usize },
    #[error("Gamma_k^-1(lB+C) undefined at l = {ell}: {reason}")]
    GammaDomainError { ell: usize, reason: String },
    #[error("invalid special-case reduction: {0}")]
    InvalidReduction(String),
    #[error("quadrature did not converge (estimate {estimate:.3e}, change {change:.3e})")]
    NonConvergentQuadrature { estimate: f64, change: f64 },
    #[error("endpoint exponent {exponent} is not integrable")]
    IntegrandSingular { exponent: f64 },
    #[error("Laplace abscissa Re(s) = {re_s} does not exceed growth rate {growth}")]
    GrowthViolation { re_s: f64, growth: f64 },
    #[error("integrand does not decay: {0}")]
    NonDecayingIntegrand(String),
    #[error("finite-difference step {step:.3e} cannot be used at x = {x}")]
    StepTooSmall { step: f64, x: f64 },
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("sampler could not satisfy preconditions for `{0}`")]
    SamplerExhausted(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures rooted in the caller's input rather than in numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotSquare { .. }
                | Error::DimensionMismatch(..)
                | Error::NonFinite { .. }
                | Error::NonCommuting { .. }
                | Error::SingularQShift { .. }
                | Error::InvalidReduction(_)
                | Error::UnknownIdentity(_)
                | Error::InvalidArgument(_)
                | Error::RadiusViolation { .. }
                | Error::GrowthViolation { .. }
        )
    }
}
