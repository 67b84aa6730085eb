use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("k must be at least 1, got {0}")]
    InvalidK(i64),

    #[error("dimension must be an odd integer >= 3, got {0}")]
    InvalidDimension(i64),

    #[error("spinor representation capped at k <= {cap}, got k = {k}")]
    OracleCap { k: u32, cap: u32 },

    #[error("sign vector has length {got}, manifold expects {expected}")]
    LengthMismatch { expected: u32, got: u32 },

    #[error("Hurwitz zeta requires a > 0, got {0}")]
    ZetaParameter(f64),

    #[error("Hurwitz zeta evaluated at s = {0}, too close to the pole at s = 1")]
    ZetaPole(f64),

    #[error("eta_numeric requires odd k, got k = {0}")]
    EvenK(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
