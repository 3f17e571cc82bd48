//! Configuration ingestion and report emission.

mod bundle;
mod config;
pub mod deviations;
mod emit;

pub use bundle::{BundleMetadata, Comparison, Increment, ReportBundle};
pub use config::{canonical_digest, load_config, Config};
pub use deviations::Deviation;
pub use emit::{emit_deviations, emit_plot_data, emit_table, Format, PlotRecord, Table};

use std::path::PathBuf;

use thiserror::Error;

use crate::footprint::FootprintError;
use crate::pipeline::PipelineError;
use crate::scenario::ScenarioError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReportError {
    #[error("cannot read {}: {reason}", path.display())]
    Io { path: PathBuf, reason: String },

    #[error("schema error in {origin} at {}: {message}", display_pointer(pointer))]
    Schema {
        origin: String,
        pointer: String,
        message: String,
    },

    #[error("invalid value in {origin} at {}: {source}", display_pointer(pointer))]
    Invariant {
        origin: String,
        pointer: String,
        #[source]
        source: FootprintError,
    },

    #[error("unknown profile {0:?}")]
    UnknownProfile(String),

    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),

    #[error("duplicate scenario name {0:?}")]
    DuplicateScenario(String),

    #[error("no scenarios")]
    NoScenarios,

    #[error("bundle has no {0}")]
    MissingTable(&'static str),

    #[error(transparent)]
    Scenario(#[from] ScenarioError),

    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

fn display_pointer(p: &str) -> &str {
    if p.is_empty() {
        "(root)"
    } else {
        p
    }
}
