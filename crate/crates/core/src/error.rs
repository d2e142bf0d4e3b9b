use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A generator, payoff or model parameter is out of range.
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("no edge between nodes {0} and {1}")]
    MissingEdge(usize, usize),

    #[error("node {0} does not exist")]
    MissingNode(usize),

    #[error("dyadic mode requires at least one edge, but the network has none")]
    NoEdges,

    #[error("triadic mode requires at least one triangle, but the network has none")]
    NoTriangles,

    #[error("configuration error in `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("linear solve failed: {0}")]
    Solve(String),

    /// A sweep cell failed; `source` carries the underlying error.
    #[error("{cell}: {source}")]
    Cell { cell: String, source: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Process exit code for the CLI: 2 for configuration problems, 3 for
    /// model/runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter { .. } | Error::Config { .. } => 2,
            Error::Cell { source, .. } => source.exit_code(),
            _ => 3,
        }
    }
}
