use thiserror::Error;

/// Errors produced by tree construction, counting and analytics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bond endpoints {0:?} and {1:?} are not nearest neighbours")]
    NotUnitBond((i64, i64), (i64, i64)),
    #[error("a tree needs at least one bond")]
    EmptyTree,
    #[error("bond {0} appears more than once")]
    DuplicateBond(String),
    #[error("root {0:?} is not an endpoint of any bond")]
    RootDetached((i64, i64)),
    #[error("{unreachable} bond(s) cannot be reached from the root")]
    NotConnected { unreachable: usize },
    #[error("bonds contain a loop ({sites} sites for {bonds} bonds)")]
    HasCycle { sites: usize, bonds: usize },
    #[error("L! is not divisible by the weight product; weight table is inconsistent")]
    InternalNonDivisible,
    #[error("more than {cap} growth orders")]
    CapExceeded { cap: u64 },
    #[error("no legal extension after {placed} bonds")]
    Stuck { placed: usize },
    #[error("comb needs an even bond count >= 2, got {0}")]
    OddLength(u64),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("{what} exceeds the limit {limit}")]
    TooLarge { what: String, limit: String },
    #[error("embedding reuses site {0:?}")]
    OverlapDetected((i64, i64)),
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable variant name used in command-line diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotUnitBond(..) => "NotUnitBond",
            Error::EmptyTree => "EmptyTree",
            Error::DuplicateBond(_) => "DuplicateBond",
            Error::RootDetached(_) => "RootDetached",
            Error::NotConnected { .. } => "NotConnected",
            Error::HasCycle { .. } => "HasCycle",
            Error::InternalNonDivisible => "InternalNonDivisible",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::Stuck { .. } => "Stuck",
            Error::OddLength(_) => "OddLength",
            Error::ConstraintViolated(_) => "ConstraintViolated",
            Error::TooLarge { .. } => "TooLarge",
            Error::OverlapDetected(_) => "OverlapDetected",
            Error::InternalMismatch(_) => "InternalMismatch",
            Error::BoundViolated(_) => "BoundViolated",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }

    pub(crate) fn too_large(what: impl Into<String>, limit: impl ToString) -> Self {
        Error::TooLarge {
            what: what.into(),
            limit: limit.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
