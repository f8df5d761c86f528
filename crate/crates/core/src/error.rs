use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element has a term outside the slab: {0}")]
    OutsideSlab(String),

    #[error("invalid algebra specification: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} did not stabilize up to E-bound {max_bound}")]
    NotStable { what: String, max_bound: u32 },

    #[error("membership failed: {0}")]
    MembershipFailed(String),

    #[error("lifting violates the chain identity: {0}")]
    ChainIdentity(String),

    #[error("hh3 = {hh3} exceeds the E2 bound {bound}")]
    InconsistentHh3 { hh3: usize, bound: usize },

    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
