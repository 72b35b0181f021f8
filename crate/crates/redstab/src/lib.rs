//! Command-line and file-format layer over `redstab-core`: JSON payloads,
//! SVG/CSV wall plots, brute-force oracles and the acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod format;
pub mod oracle;
pub mod plot;

pub use commands::run;

/// Failures surfaced by the command-line layer.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] redstab_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 1 for domain errors, 2 for usage and IO errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }

    /// Machine-readable error name.
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.name(),
            CliError::Usage(_) => "UsageError",
            CliError::Io(_) => "IoError",
        }
    }
}
