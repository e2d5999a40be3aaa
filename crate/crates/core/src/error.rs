use thiserror::Error;

/// Failure modes of the numerical routines.
///
/// Variants that signal a possible counterexample to a conjecture
/// (`MonotonicityViolation`, `BracketViolation`) are reported as data
/// and never swallowed.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("pole of the function at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("{what} exceeds supported range: {value} (limit {limit})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate point t = {t}: Z and Z' vanish together (multiple zero?)")]
    Degenerate { t: f64 },

    #[error("quadrature did not converge on [{a}, {b}] (estimated error {err:e})")]
    Quadrature { a: f64, b: f64, err: f64 },

    #[error("kappa is not increasing near t = {t}: {detail}")]
    MonotonicityViolation { t: f64, detail: String },

    #[error("root left its bracket ({lo}, {hi}): {detail}")]
    BracketViolation { lo: f64, hi: f64, detail: String },

    #[error("multiplicity of the zero at {xi} is indeterminate from jets through order 2")]
    IndeterminateMultiplicity { xi: f64 },

    #[error("winding number {value} is not close to an integer on [{sigma_lo}, {sigma_hi}] x [{t_lo}, {t_hi}]")]
    WindingNonInteger {
        value: f64,
        sigma_lo: f64,
        sigma_hi: f64,
        t_lo: f64,
        t_hi: f64,
    },

    #[error("cross-check mismatch in {what}: {lhs} vs {rhs}")]
    CrossCheckMismatch { what: &'static str, lhs: f64, rhs: f64 },

    #[error("insufficient terms: {0}")]
    InsufficientTerms(String),

    #[error("zero catalog reaches height {have}, need at least {need}")]
    InsufficientHeight { have: f64, need: f64 },

    #[error("zero list does not cover [{lo}, {hi}]")]
    Coverage { lo: f64, hi: f64 },

    #[error("t = {t} is within {dist:e} of a zero ordinate")]
    NearZeroOrdinate { t: f64, dist: f64 },

    #[error("kappa drift {deviation:e} at confirmed zero {n} exceeds {limit:e}")]
    KappaDrift { n: u32, deviation: f64, limit: f64 },

    #[error("search failed: {0}")]
    Search(String),
}

impl Error {
    /// True for precondition failures (bad input), false for numerical
    /// search failures.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::OutOfRange { .. }
                | Error::Domain(_)
                | Error::NearZeroOrdinate { .. }
                | Error::InsufficientTerms(_)
                | Error::InsufficientHeight { .. }
                | Error::Coverage { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
