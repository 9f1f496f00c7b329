use thiserror::Error;

use crate::channels::ChannelKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("eigenvalue iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not Hermitian: max |m - m^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("entry ({row}, {col}) has magnitude {magnitude:e} outside the X pattern")]
    NotXForm {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("{name} = {value} is outside {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("eigenvalue {re:e}{im:+e}i has a non-negligible imaginary part")]
    ComplexEigenvalue { re: f64, im: f64 },

    #[error("eigenvalue {value:e} is negative beyond rounding")]
    NegativeEigenvalue { value: f64 },

    #[error("no closed-form critical probability for the {0} channel")]
    Unsupported(ChannelKind),

    #[error("discriminant changes sign {sign_changes} times on the {points}-point scan")]
    BracketFailure { sign_changes: usize, points: usize },

    #[error("initial state is not entangled")]
    NotEntangled,

    #[error("invalid configuration: {field}: {reason}")]
    Config { field: &'static str, reason: String },
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::ComplexEigenvalue { .. }
                | Error::NegativeEigenvalue { .. }
                | Error::BracketFailure { .. }
        )
    }

    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }
}
