//! Std companion to `erdos-straus-core`: multi-threaded scans with per-`n`
//! time budgets, an on-disk witness cache, JSON/CSV report formats and the
//! text rendering used by the `erdos-straus` binary.

pub mod cache;
pub mod parallel;
pub mod render;
pub mod report;

pub use cache::WitnessCache;
pub use parallel::{scan, series, ScanOptions};
pub use report::RunManifest;

/// Errors from the std layer. Search exhaustion is not an error.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl From<erdos_straus_core::search::ScanError> for Error {
    fn from(e: erdos_straus_core::search::ScanError) -> Self {
        Error::Usage(e.to_string())
    }
}

impl From<erdos_straus_core::series::SeriesError> for Error {
    fn from(e: erdos_straus_core::series::SeriesError) -> Self {
        Error::Usage(e.to_string())
    }
}

impl From<erdos_straus_core::ConfigError> for Error {
    fn from(e: erdos_straus_core::ConfigError) -> Self {
        Error::Usage(e.to_string())
    }
}

impl From<erdos_straus_core::InstanceError> for Error {
    fn from(e: erdos_straus_core::InstanceError) -> Self {
        Error::Usage(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
