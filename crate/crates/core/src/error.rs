use thiserror::Error;

/// Errors raised across the library.
///
/// Variants split into two families: malformed or unsuitable input, and
/// failures of a mathematical verification step. [`Error::is_verification`]
/// tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("group enumeration exceeded the cap of {cap} elements")]
    ClosureOverflow { cap: usize },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a homomorphism: f({x}*{y}) != f({x})*f({y})")]
    NotAHomomorphism { x: usize, y: usize },

    #[error("class map inconsistent: element {element} of class {class} leaves the image class")]
    InconsistentClassMap { class: usize, element: usize },

    #[error("subgroup is not normal: conjugating {element} by generator {generator} leaves it")]
    NotNormal { element: usize, generator: usize },

    #[error("subgroup is not invariant: endomorphism maps {element} outside it")]
    NotInvariant { element: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("rational function is not an Euler product of (1 - z^p) factors")]
    NotEulerForm,

    #[error("no suitable prime found below {cap}")]
    NoSuitablePrime { cap: u64 },

    #[error("character table construction failed: {0}")]
    TableConstructionFailed(String),

    #[error("no intertwiner: the representation is not equivalent to its pullback")]
    NoIntertwiner,

    #[error("intertwiner space has dimension {dim} > 1; representation data is reducible or invalid")]
    NonSimpleIntertwiner { dim: usize },

    #[error("missing representation data for character {0}")]
    MissingRepresentationData(usize),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("Reidemeister number is infinite at n={0}")]
    InfiniteReidemeister(u32),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("shift elements have different base groups")]
    BaseMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors that signal a violated identity or an unverifiable
    /// computation rather than bad input.
    pub fn is_verification(&self) -> bool {
        matches!(
            self,
            Error::InconsistentClassMap { .. }
                | Error::NotEulerForm
                | Error::TableConstructionFailed(_)
                | Error::NoIntertwiner
                | Error::NonSimpleIntertwiner { .. }
                | Error::InfiniteReidemeister(_)
                | Error::VerificationFailed(_)
        )
    }

    /// Stable short code used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::ClosureOverflow { .. } => "ClosureOverflow",
            Error::NotAGroup(_) => "NotAGroup",
            Error::NotAHomomorphism { .. } => "NotAHomomorphism",
            Error::InconsistentClassMap { .. } => "InconsistentClassMap",
            Error::NotNormal { .. } => "NotNormal",
            Error::NotInvariant { .. } => "NotInvariant",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::NotEulerForm => "NotEulerForm",
            Error::NoSuitablePrime { .. } => "NoSuitablePrime",
            Error::TableConstructionFailed(_) => "TableConstructionFailed",
            Error::NoIntertwiner => "NoIntertwiner",
            Error::NonSimpleIntertwiner { .. } => "NonSimpleIntertwiner",
            Error::MissingRepresentationData(_) => "MissingRepresentationData",
            Error::InvalidRepresentation(_) => "InvalidRepresentation",
            Error::InfiniteReidemeister(_) => "InfiniteReidemeister",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::BaseMismatch => "BaseMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
