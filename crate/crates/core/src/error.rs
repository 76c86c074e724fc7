use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of a physical formula.
    Domain { what: &'static str, value: f64 },
    /// A scenario parameter violates its constraint.
    InvalidScenario { field: &'static str, reason: &'static str },
    /// Strict matrix building hit a power game that did not converge.
    Uncertified { size_a: u32, size_b: u32, residual: f64 },
    /// Trajectory frames are malformed.
    InvalidTrajectory { frame: usize, reason: &'static str },
    /// A caller-side precondition does not hold.
    Precondition(&'static str),
    /// Something the math says cannot happen did.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::InvalidScenario { field, reason } => write!(f, "invalid scenario: {field} {reason}"),
            Error::Uncertified { size_a, size_b, residual } => write!(
                f,
                "power game for modulation pair ({size_a}, {size_b}) did not converge (residual {residual:e})"
            ),
            Error::InvalidTrajectory { frame, reason } => write!(f, "trajectory frame {frame}: {reason}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
