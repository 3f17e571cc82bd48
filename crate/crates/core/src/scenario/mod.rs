//! Workforce throughput, scenario evaluation and cross-scenario comparison.
//!
//! A [`Scenario`] combines a daily document volume, the operators needed to
//! handle it, the cloud-side energy of each pipeline stage and a flat daily
//! overhead. [`evaluate_scenario`] turns it into a [`DailyFootprint`]:
//!
//! ```text
//! energy = operators × laptop_kwh_per_day + cloud_kwh_per_doc × volume + overhead
//! co2    = energy × emission_factor
//! water  = energy ⊗ wue          (low with low, high with high)
//! ```

mod compare;
mod model;
mod workforce;

pub use compare::{compare_scenarios, incremental_cost, incremental_cost_by_metric, MetricRanges};
pub use model::{
    cloud_energy_per_doc, evaluate_scenario, DailyFootprint, PipelineStage, PipelineStageRepr, Scenario, ScenarioRepr,
};
pub use workforce::{docs_per_operator_day, operators_required, WorkforceParams, WorkforceRepr};

use thiserror::Error;

use crate::footprint::FootprintError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Invalid(#[from] FootprintError),

    #[error("throughput must be at least one document per operator-day")]
    ZeroThroughput,

    #[error("baseline {metric} must be strictly positive")]
    ZeroBaseline { metric: &'static str },
}
