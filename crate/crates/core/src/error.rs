use thiserror::Error;

/// Errors raised by the library. Values are reported as `f64` regardless of
/// the scalar type the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("Pauli index {0} out of range 0..=3")]
    PauliIndex(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds tolerance {tol:e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("Jacobi eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("unphysical Bloch vector: |r| = {0}")]
    UnphysicalBloch(f64),

    #[error("density matrix is not valid: {0}")]
    InvalidDensity(&'static str),

    #[error("invalid X-state: minimum eigenvalue {0:e} is negative")]
    InvalidXState(f64),

    #[error("normalized distance is undefined at n = 1 (equilibrium distance is zero)")]
    UndefinedNormalization,

    #[error("RK4 step too large: h*gamma0*n = {0} must be below 0.1")]
    StepTooLarge(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<S: crate::Scalar>(name: &'static str, value: S, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value: value.as_f64(),
        expected,
    }
}
