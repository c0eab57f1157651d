use thiserror::Error;

/// Errors raised by the verification toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} is outside its domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),

    #[error("invalid interval ({lo}, {hi})")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("integrand returned a non-finite value at {abscissa}")]
    IntegrandFailure { abscissa: f64 },

    #[error("G(z) has a pole at {which}")]
    Pole { which: Singularity },

    #[error("z = {re} + {im}i lies on the branch cut of the principal logarithm")]
    OnBranchCut { re: f64, im: f64 },

    #[error("contour passes within {distance:e} of the singularity at {which}")]
    Geometry { which: Singularity, distance: f64 },

    #[error("invalid contour: {0}")]
    InvalidContour(&'static str),

    #[error("non-finite sample at {re} + {im}i while differentiating")]
    Evaluation { re: f64, im: f64 },

    #[error("{0}")]
    Inconsistent(String),
}

/// The singular points of the keyhole integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    Origin,
    One,
    Z0,
}

impl std::fmt::Display for Singularity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Singularity::Origin => f.write_str("z = 0"),
            Singularity::One => f.write_str("z = 1"),
            Singularity::Z0 => f.write_str("z = z0"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
