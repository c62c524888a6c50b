use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tangle: {0}")]
    Tangle(String),
    #[error("diagram parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("diagram is not planar: {0}")]
    Planarity(String),
    #[error("inconsistent orientation: {0}")]
    Orientation(String),
    #[error("unknown builtin diagram `{0}`")]
    UnknownBuiltin(String),
    #[error("state does not match diagram: {0}")]
    StateMismatch(String),
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("invalid cobordism site: {0}")]
    Site(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("crossing `{0}` is not negative")]
    NotNegative(String),
    #[error("complex has open tangles; homology needs closed objects")]
    OpenTangle,
    #[error("malformed catalog: {0}")]
    Catalog(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
