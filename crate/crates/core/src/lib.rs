//! Energy, CO₂ and water footprint modeling for document-intelligence
//! workflows.
//!
//! The crate is split by concern:
//!
//! - [`footprint`]: interval arithmetic, unit-carrying quantities and the
//!   conversions from tokens to facility energy, CO₂ and water.
//! - [`scenario`]: workforce throughput, manual / HITL / agentic scenario
//!   evaluation and cross-scenario comparison.
//! - [`pipeline`]: a deterministic invoice extraction pipeline with token
//!   ledgers and per-stage energy metering.
//! - [`report`]: configuration loading and table / plot-data emission.
//!
//! Everything except config loading is a pure function over immutable
//! values.

pub mod footprint;
pub mod pipeline;
pub mod report;
pub mod rounding;
pub mod scenario;

pub use footprint::{Carbon, Energy, EnergyRate, Footprint, FootprintError, FootprintProfile, Interval, Water};
