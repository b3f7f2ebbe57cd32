//! Experiment driver for rainbow matching campaigns: verification of the
//! degree bound on random instances, threshold scans, certification of the
//! counting inequality, audits and Latin square experiments.

pub mod campaign;
pub mod config;
pub mod output;

use std::process::ExitCode;

use thiserror::Error;

pub use campaign::{scan, verify, ScanConfig, VerifyOutput};
pub use config::{CampaignConfig, NRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] rainbow_core::io::FormatError),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Violation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 usage, 2 parse or validation, 3 property violation.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 1,
            CliError::Format(_) | CliError::Invalid(_) => 2,
            CliError::Violation(_) => 3,
        })
    }
}
