use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid multiplicatively closed set: {0}")]
    InvalidMcs(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("{what} exceeds cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("localization is the zero module: S meets the annihilator")]
    ZeroLocalization,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
