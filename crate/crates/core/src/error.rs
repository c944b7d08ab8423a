use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("map is disconnected")]
    Disconnected,
    #[error("root policy requires an outer face, but none is set")]
    MissingOuterFace,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("label error: {0}")]
    Label(String),
    #[error("code does not embed in the sphere (genus {0})")]
    NonPlanar(usize),
    #[error("invalid move site: {0}")]
    InvalidSite(String),
    #[error("operation requires plane mode with an outer face")]
    OuterFaceRequired,
    #[error("parity error: {0}")]
    Parity(String),
    #[error("invalid route: {0}")]
    InvalidRoute(String),
    #[error("invalid torus diagram: {0}")]
    Torus(String),
    #[error("kmap: {0}")]
    Kmap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
