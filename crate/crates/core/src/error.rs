use thiserror::Error;

/// Errors raised by the special functions, the analytic solutions and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    GammaPole(f64),

    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("{what} did not converge to tolerance {tolerance:e} (estimate {estimate:e})")]
    Convergence {
        what: &'static str,
        tolerance: f64,
        estimate: f64,
    },

    #[error("pole of {what} at a = {at}")]
    Pole { what: &'static str, at: f64 },

    #[error("a = {a} is not a root of the spectrum equation (relative residual {residual:e})")]
    NotARoot { a: f64, residual: f64 },

    #[error("wave table does not decay at the grid ends (tail ratio {tail:e} > {threshold:e})")]
    InsufficientDecay { tail: f64, threshold: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("wave table is identically zero")]
    DegenerateWavefunction,

    #[error("Frobenius start x0 = {x0} too large (truncation estimate {estimate:e})")]
    CutoffTooLarge { x0: f64, estimate: f64 },

    #[error("outward integration overflowed at x = {0}")]
    Overflow(f64),

    #[error("step too coarse: halving the step moved the result by {change:e} (limit {limit:e})")]
    StepTooCoarse { change: f64, limit: f64 },

    #[error("could not bracket level n = {level}: {reason}")]
    BracketFailure { level: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}
