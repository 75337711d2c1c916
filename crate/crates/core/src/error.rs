use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("modulus {0} is not a prime below 2^31")]
    NonPrimeModulus(u64),

    #[error("generator `{0}` is not homogeneous")]
    Inhomogeneous(String),

    #[error("generator `{0}` has terms of degree below 2, so the presentation is not minimal")]
    NotMinimal(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` is assigned more than once")]
    DuplicateAssignment(String),

    #[error("variable `{0}` has no image")]
    MissingAssignment(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("map is not well defined: image of generator `{generator}` is `{image}`, which is not in the target ideal")]
    NotWellDefined { generator: String, image: String },

    #[error("map is not local: image of `{0}` has a nonzero constant term")]
    NotLocal(String),

    #[error("operation needs prime characteristic, but the coefficient field is QQ")]
    CharacteristicZero,

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// Parse and validation failures of user input, as opposed to
    /// mathematical precondition rejections.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::NonPrimeModulus(_)
                | Error::Inhomogeneous(_)
                | Error::NotMinimal(_)
                | Error::UnknownVariable(_)
                | Error::DuplicateAssignment(_)
                | Error::MissingAssignment(_)
                | Error::ArityMismatch { .. }
        )
    }
}
