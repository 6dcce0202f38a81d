use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation text {text:?}: {reason}")]
    MalformedPermutation { text: String, reason: String },

    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),

    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("degree {degree} exceeds the configured cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("element {0} does not belong to the parent group")]
    NotInGroup(String),

    #[error("{what}: group order {order} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        order: u128,
        bound: u128,
    },

    #[error("group order does not fit in 128 bits")]
    OrderOverflow,

    #[error("cyclic group: no covering exists")]
    CyclicGroup,

    #[error("subgroup is not proper")]
    NotProper,

    #[error("invalid group file: {0}")]
    GroupFile(String),

    #[error("invalid family spec {text:?}: {reason}")]
    InvalidSpec { text: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown sporadic group {0:?}")]
    UnknownSporadic(String),

    #[error("invalid manifest: {0}")]
    Manifest(String),

    #[error("invalid instance {text:?}: {reason}")]
    InvalidInstance { text: String, reason: String },
}

impl Error {
    /// True for errors that signal an instance beyond the configured desk-scale bounds.
    pub fn is_out_of_scale(&self) -> bool {
        matches!(
            self,
            Error::BoundExceeded { .. }
                | Error::OrderOverflow
                | Error::DegreeTooLarge { .. }
                | Error::Unsupported(_)
        )
    }
}
