use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    MalformedAlphabet { line: usize, message: String },

    #[error("letter `{0}` is declared more than once")]
    DuplicateLetter(String),

    #[error("conflicting complement for `{letter}`: `{first}` and `{second}`")]
    ConflictingComplement {
        letter: String,
        first: String,
        second: String,
    },

    #[error("complement map is not an involution at `{0}`")]
    NotAnInvolution(String),

    #[error("alphabet has no letters")]
    EmptyAlphabet,

    #[error("`{token}` is not a letter of the alphabet (in `{input}`)")]
    UnknownLetter { token: String, input: String },

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("words are over different alphabets")]
    AlphabetMismatch,

    #[error("`{0}` is not a member of the requested list")]
    NotAMember(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("bound {bound} is smaller than the required {required}")]
    BoundTooSmall { bound: usize, required: usize },

    #[error("`{0}` is not a member of the closure")]
    NotInClosure(String),

    #[error("word is crossing with respect to the primer")]
    NotNonCrossing,

    #[error("word does not begin with the primer and end with its complement")]
    NotAnchored,

    #[error("wrong word class: {0}")]
    WrongClass(String),

    #[error("condition {0} does not hold for this (3,2)-word")]
    ConditionNotSatisfied(u8),

    #[error("regularity condition {0} holds, so there is no non-regularity witness")]
    ConditionViolated(u8),

    #[error("construction disagrees with the closure oracle on `{counterexample}` ({detail})")]
    VerificationFailed {
        counterexample: String,
        detail: String,
    },
}
