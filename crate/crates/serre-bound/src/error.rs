use serre_core::elimination::ElimError;
use serre_core::forms::FormError;
use serre_core::gl2::Gl2Error;
use serre_core::irreducibility::IrreducibilityError;
use serre_core::levels::LevelError;
use serre_core::numfield::FieldError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Elimination(#[from] ElimError),
    #[error(transparent)]
    Irreducibility(#[from] IrreducibilityError),
    #[error(transparent)]
    Level(#[from] LevelError),
    #[error(transparent)]
    Gl2(#[from] Gl2Error),
    #[error("bad prime spec `{spec}`: {reason}")]
    PrimeSpec { spec: String, reason: String },
    #[error("remote unavailable: {0}")]
    RemoteUnavailable(String),
    #[error("HTTP {status} from {url}")]
    Http { status: u16, url: String },
    #[error("cache entry {path} failed its checksum and could not be refetched: {reason}")]
    CorruptCache { path: String, reason: String },
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io { path: path.as_ref().display().to_string(), source }
    }

    pub fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        Error::Json { context: context.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
