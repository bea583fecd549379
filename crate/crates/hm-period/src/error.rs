//! Error types shared across the crate.

/// Which end of the admissible curvature interval was violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketSide {
    /// `h_m` is at or below the lower endpoint `h_low`.
    Low,
    /// `h_m` is at or above the upper endpoint `h_high`.
    High,
}

/// Errors produced by the model and the numerical routines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An input violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative routine ran out of budget before reaching its tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// An exact algebraic identity failed a numerical residual check.
    /// This signals an implementation bug, not a bad input.
    #[error("identity check `{name}` failed: max relative residual {residual:.3e} exceeds {tol:.1e}")]
    Identity {
        name: String,
        residual: f64,
        tol: f64,
    },

    /// `h_m` lies outside the open interval `(h_low, h_high)` for the
    /// requested winding number `k`.
    #[error("h_m = {h_m} is outside the open interval for k = {k}: {}", match .side {
        BracketSide::Low => format!("it must exceed h_low = {bound}"),
        BracketSide::High => format!("it must be below h_high = {bound}"),
    })]
    Bracket {
        side: BracketSide,
        bound: f64,
        h_m: f64,
        k: u32,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn convergence(msg: impl Into<String>) -> Self {
        Error::Convergence(msg.into())
    }
}
