use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: expected 2 <= N < 65536")]
    InvalidModulus(u64),
    #[error("singular element: determinant {det} is not a unit mod {modulus}")]
    SingularElement { det: u32, modulus: u32 },
    #[error("closure too large: more than {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("small-level special case: N = {0} is below 5")]
    SmallLevel(u32),
    #[error("modulus mismatch: expected {expected}, found {found}")]
    ModulusMismatch { expected: u32, found: u32 },
    #[error("subgroup is not closed")]
    NotClosed,
    #[error("unknown subgroup identifier `{0}`")]
    UnknownSubgroup(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("image table, line {line}: {message}")]
    Table { line: usize, message: String },
}

impl Error {
    /// True for errors caused by a size cap rather than by bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::ClosureTooLarge { .. } | Error::EnumerationTooLarge(_))
    }

    /// True for errors caused by malformed or inconsistent input data.
    pub fn is_data(&self) -> bool {
        matches!(self, Error::Data(_) | Error::Table { .. })
    }
}
