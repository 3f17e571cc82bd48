use serde::Serialize;

use super::{DailyFootprint, ScenarioError};
use crate::footprint::Interval;

/// Percentage ranges for the three footprint metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricRanges {
    pub energy_pct: Interval,
    pub co2_pct: Interval,
    pub water_pct: Interval,
}

fn check_positive(iv: Interval, metric: &'static str) -> Result<(), ScenarioError> {
    if iv.lo() > 0.0 {
        Ok(())
    } else {
        Err(ScenarioError::ZeroBaseline { metric })
    }
}

// Endpoints are matched (lo with lo, hi with hi); the pair is then sorted.
fn reduction(base: Interval, cand: Interval, metric: &'static str) -> Result<Interval, ScenarioError> {
    check_positive(base, metric)?;
    let at_hi = (1.0 - cand.hi() / base.hi()) * 100.0;
    let at_lo = (1.0 - cand.lo() / base.lo()) * 100.0;
    Ok(Interval::hull(at_hi, at_lo)?)
}

fn increase(reference: Interval, cand: Interval, metric: &'static str) -> Result<Interval, ScenarioError> {
    check_positive(reference, metric)?;
    let at_hi = (cand.hi() / reference.hi() - 1.0) * 100.0;
    let at_lo = (cand.lo() / reference.lo() - 1.0) * 100.0;
    Ok(Interval::hull(at_hi, at_lo)?)
}

/// Percentage reduction of `candidate` relative to `baseline`, per metric.
pub fn compare_scenarios(baseline: &DailyFootprint, candidate: &DailyFootprint) -> Result<MetricRanges, ScenarioError> {
    Ok(MetricRanges {
        energy_pct: reduction(baseline.energy.as_kwh(), candidate.energy.as_kwh(), "energy")?,
        co2_pct: reduction(baseline.co2.as_grams(), candidate.co2.as_grams(), "co2")?,
        water_pct: reduction(baseline.water.as_liters(), candidate.water.as_liters(), "water")?,
    })
}

/// Extra energy of `agentic` over `hitl`, in percent.
pub fn incremental_cost(hitl: &DailyFootprint, agentic: &DailyFootprint) -> Result<Interval, ScenarioError> {
    increase(hitl.energy.as_kwh(), agentic.energy.as_kwh(), "energy")
}

/// [`incremental_cost`] for all three metrics.
pub fn incremental_cost_by_metric(
    reference: &DailyFootprint,
    candidate: &DailyFootprint,
) -> Result<MetricRanges, ScenarioError> {
    Ok(MetricRanges {
        energy_pct: increase(reference.energy.as_kwh(), candidate.energy.as_kwh(), "energy")?,
        co2_pct: increase(reference.co2.as_grams(), candidate.co2.as_grams(), "co2")?,
        water_pct: increase(reference.water.as_liters(), candidate.water.as_liters(), "water")?,
    })
}
