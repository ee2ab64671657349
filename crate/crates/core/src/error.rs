use thiserror::Error;

/// Errors produced by state construction, witness evaluation and the
/// phase-space quadratures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Amplitude list was empty or had vanishing norm.
    #[error("cannot normalize a zero vector")]
    ZeroVector,

    /// Probability parameter outside its allowed interval.
    #[error("probability p = {p} outside the allowed interval ({low}, {high})")]
    InvalidProbability { p: f64, low: f64, high: f64 },

    /// Deformation parameter below the Abel validity bound.
    #[error("q = {q} violates the bound q >= {bound} (= {which}); amplitudes would turn complex")]
    AbelBound { q: f64, bound: f64, which: &'static str },

    /// An order parameter outside the domain of a witness or special function.
    #[error("{what}: order {order} is out of domain ({requirement})")]
    OrderDomain {
        what: &'static str,
        order: i64,
        requirement: &'static str,
    },

    /// Agarwal-Tara denominator det(mu) - det(m) vanished; the ratio is not a number.
    #[error("Agarwal-Tara ratio is indeterminate: |det(mu) - det(m)| = {denom:e} < 1e-14")]
    IndeterminateDenominator { denom: f64 },

    /// A truncated series or a refinement loop failed to settle below tolerance.
    #[error("{what} did not converge: last two estimates {previous} and {last} (tolerance {tolerance})")]
    NonConvergence {
        what: &'static str,
        previous: f64,
        last: f64,
        tolerance: f64,
    },

    /// Grid resolution below the minimum of two points per axis.
    #[error("grid resolution {resolution} is too small (need >= 2 per axis)")]
    ResolutionTooSmall { resolution: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
