//! Error type shared by the whole crate.
//!
//! Every fallible operation returns one of these variants. `Error::name` is the
//! stable machine-readable token the CLI prints on its diagnostic line, so the
//! set of names is part of the public contract; `Display` adds human detail.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("InvalidDim: (n, k) = ({n}, {k}) requires k >= 2 and n >= 2k + 1")]
    InvalidDim { n: i64, k: i64 },

    #[error("GroupMismatch: framings live in different groups")]
    GroupMismatch,

    #[error("DuplicateId: component id `{0}` already used")]
    DuplicateId(String),

    #[error("InvalidId: `{0}` is not a valid component id")]
    InvalidId(String),

    #[error("UnknownGenerator: word letter `{0}` names no dotted component")]
    UnknownGenerator(String),

    #[error("UnknownComponent: `{0}` names no component of the required kind")]
    UnknownComponent(String),

    #[error("SelfSlide: cannot slide `{0}` over itself")]
    SelfSlide(String),

    #[error("NotCancelling: {0}")]
    NotCancelling(String),

    #[error("ReplayError: move {index} failed: {cause}")]
    Replay {
        index: usize,
        #[source]
        cause: Box<Error>,
    },

    #[error("NotSimpleFamily: {0}")]
    NotSimpleFamily(String),

    #[error("NotOneDottedFamily: {0}")]
    NotOneDottedFamily(String),

    #[error("RequiresK2: operation needs k = 2, diagram has k = {0}")]
    RequiresK2(u32),

    #[error("RequiresK3: operation needs k >= 3, diagram has k = {0}")]
    RequiresK3(u32),

    #[error("NotAComplex: {0}")]
    NotAComplex(String),

    #[error("StructureMismatch: {0}")]
    StructureMismatch(String),

    #[error("DimMismatch: diagrams have different (n, k)")]
    DimMismatch,

    #[error("SyntaxError: line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("SemanticError: {0}")]
    Semantic(String),

    #[error("UnknownExample: no bundled example named `{0}`")]
    UnknownExample(String),
}

impl Error {
    /// Stable token for scripting against the CLI's stderr line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidDim { .. } => "InvalidDim",
            Error::GroupMismatch => "GroupMismatch",
            Error::DuplicateId(_) => "DuplicateId",
            Error::InvalidId(_) => "InvalidId",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::UnknownComponent(_) => "UnknownComponent",
            Error::SelfSlide(_) => "SelfSlide",
            Error::NotCancelling(_) => "NotCancelling",
            Error::Replay { .. } => "ReplayError",
            Error::NotSimpleFamily(_) => "NotSimpleFamily",
            Error::NotOneDottedFamily(_) => "NotOneDottedFamily",
            Error::RequiresK2(_) => "RequiresK2",
            Error::RequiresK3(_) => "RequiresK3",
            Error::NotAComplex(_) => "NotAComplex",
            Error::StructureMismatch(_) => "StructureMismatch",
            Error::DimMismatch => "DimMismatch",
            Error::Syntax { .. } => "SyntaxError",
            Error::Semantic(_) => "SemanticError",
            Error::UnknownExample(_) => "UnknownExample",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
