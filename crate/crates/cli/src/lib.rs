//! Library half of the `reidemeister` command-line tool: group and
//! morphism sources, corpus management, and the property-verification
//! runner.

pub mod commands;
pub mod corpus;
pub mod report;
pub mod sources;
pub mod verify;

use thiserror::Error;

/// Harness-level failures. Mathematical errors from the core crate are
/// wrapped with the source context that produced them.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("failed to load `{source_desc}`: {detail}")]
    Load { source_desc: String, detail: String },
    #[error(transparent)]
    Math(#[from] reidemeister::Error),
}

impl CliError {
    pub fn load(source_desc: impl Into<String>, detail: impl std::fmt::Display) -> Self {
        CliError::Load { source_desc: source_desc.into(), detail: detail.to_string() }
    }
}
