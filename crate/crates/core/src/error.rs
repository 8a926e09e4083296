use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },

    /// An axiom failed; `witness` names the offending elements or entries.
    #[error("axiom violated: {axiom} (witness: {witness})")]
    AxiomViolation { axiom: String, witness: String },

    #[error("{what} has size {size}, exceeding the configured bound {bound}")]
    SizeBoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("submodule lattice exceeds the node bound {bound}")]
    NodeBoundExceeded { bound: usize },

    #[error("homomorphism search space {size} exceeds the bound {bound}")]
    SearchBoundExceeded { size: u128, bound: u128 },

    #[error("modules are over different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },

    #[error("submodules belong to different parent modules")]
    ParentMismatch,

    #[error("not a submodule: {0}")]
    InvalidSubmodule(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("module is not delta-supplemented: {0}")]
    NotDeltaSupplemented(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("no module named {0:?} in the instance")]
    UnknownModule(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn axiom(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::AxiomViolation {
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        let text = e.to_string();
        let message = match text.rsplit_once(" at line ") {
            Some((head, _)) => head.to_string(),
            None => text,
        };
        Error::Parse {
            message,
            line: e.line(),
            column: e.column(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
