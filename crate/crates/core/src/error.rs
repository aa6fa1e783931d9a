use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("`{0}` is reserved and cannot be used as a letter")]
    ReservedToken(String),
    #[error("`{0}` is not a valid letter token")]
    InvalidToken(String),
    #[error("letter `{0}` is declared twice")]
    DuplicateLetter(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("bad inverse pairing: {0}")]
    BadInverse(String),
    #[error("expected a {expected}-tuple, got {found} components")]
    Arity { expected: usize, found: usize },
    #[error("letter #{0} is outside the machine's alphabet")]
    ForeignLetter(u32),
    #[error("machines are over different alphabets")]
    AlphabetMismatch,
    #[error("not a padded string: {0}")]
    NotPadded(String),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
