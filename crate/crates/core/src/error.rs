use alloc::string::String;

/// Errors reported by the operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{what} {value} out of range (expected {range})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: String,
    },
    #[error("unknown code `{0}`")]
    UnknownCode(String),
    #[error("enumeration needs 2^{required} tuples, above the guard 2^{limit}")]
    Infeasible { required: u32, limit: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix over F_2 is singular")]
    Singular,
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("missing value for variable {0}")]
    MissingVariable(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
