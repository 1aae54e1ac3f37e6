use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown {kind} `{name}`")]
    UnknownId { kind: &'static str, name: String },
    #[error("`{first}` then `{then}` is not composable")]
    NotComposable { first: String, then: String },
    #[error("no declared fiber product for the cospan ({left}, {right})")]
    PullbackUnavailable { left: String, right: String },
    #[error("square is not independent: {0}")]
    NotIndependent(String),
    #[error("`{0}` is not confined")]
    NotConfined(String),
    #[error("`{0}` is not specialized")]
    NotSpecialized(String),
    #[error("label `{label}` does not lie over `{object}`")]
    UnknownLabel { label: String, object: String },
    #[error("theory `{0}` has no orientation data")]
    MissingOrientationData(String),
    #[error("context mismatch: {0}")]
    Context(String),
    #[error("membership violated: {0}")]
    Membership(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for the error that bounded categories are allowed to raise when a
    /// construction leaves the declared pullback table.
    pub fn is_pullback_unavailable(&self) -> bool {
        matches!(self, Error::PullbackUnavailable { .. })
    }
}
