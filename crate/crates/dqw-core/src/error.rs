use core::fmt;

/// Everything that can go wrong in this crate: input validation failures
/// (non-unitary coins, non-normalized states, out-of-range parameters) and
/// numerical failures (residual checks, non-convergent root finding).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Tolerances must be strictly positive and finite.
    InvalidTolerance { eq_tol: f64, prob_tol: f64 },
    /// A stored value was NaN or infinite.
    NonFinite { what: &'static str },
    /// A matrix that must be unitary is not; `deviation` is the max-entry
    /// distance of m*·m from the identity.
    NonUnitary { what: &'static str, deviation: f64 },
    /// A coin pair failed the isometry check; the flags mirror the
    /// per-condition diagnostic.
    NonIsometric {
        unitary_r: f64,
        unitary_i: f64,
        product_real: f64,
    },
    /// An initial state must have unit Euclidean norm.
    NotNormalized { norm: f64 },
    /// A parameter set violated its defining constraints.
    InvalidParams { what: &'static str, deviation: f64 },
    /// An input lay outside the domain of a closed-form expression.
    Domain { what: &'static str },
    /// The parameter Δ is one of the excluded angles for which the requested
    /// limit object does not exist (the walk is periodic or ballistic there).
    ExcludedDelta { delta: f64 },
    /// A numerical routine failed its accuracy contract.
    Numerical { what: &'static str, value: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidTolerance { eq_tol, prob_tol } => write!(
                f,
                "tolerances must be strictly positive and finite (eq_tol={eq_tol}, prob_tol={prob_tol})"
            ),
            Error::NonFinite { what } => write!(f, "{what} contains a non-finite value"),
            Error::NonUnitary { what, deviation } => {
                write!(f, "{what} is not unitary (deviation {deviation:.3e})")
            }
            Error::NonIsometric {
                unitary_r,
                unitary_i,
                product_real,
            } => write!(
                f,
                "coin pair is not an isometry (unitary_r={unitary_r}, unitary_i={unitary_i}, product_real={product_real})"
            ),
            Error::NotNormalized { norm } => {
                write!(f, "initial state must have unit norm (got {norm:.17})")
            }
            Error::InvalidParams { what, deviation } => {
                write!(f, "invalid parameters: {what} (deviation {deviation:.3e})")
            }
            Error::Domain { what } => write!(f, "domain error: {what}"),
            Error::ExcludedDelta { delta } => write!(
                f,
                "delta = {delta} is an excluded angle: the limit measure degenerates; \
                 use the exact finite-time states instead"
            ),
            Error::Numerical { what, value } => {
                write!(f, "numerical failure: {what} ({value:.3e})")
            }
        }
    }
}

impl core::error::Error for Error {}
